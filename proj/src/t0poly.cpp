#include "taumap/t0poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace taumap {

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  static const int kCacheSize = 64;
  static std::vector<Integer> cache = [] {
    std::vector<Integer> c(kCacheSize);
    c[0] = 1;
    for (int i = 1; i < kCacheSize; ++i) c[i] = c[i - 1] * i;
    return c;
  }();
  if (n < kCacheSize) return cache[n];
  Integer r = cache[kCacheSize - 1];
  for (int i = kCacheSize; i <= n; ++i) r *= i;
  return r;
}

Rational factorial_ratio(int num, int den) {
  if (den < 0) return Rational(0);
  if (num < 0) throw std::invalid_argument("factorial_ratio: negative numerator argument");
  return Rational(factorial(num)) / Rational(factorial(den));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_decimal_string(const Integer& n) { return n.str(); }

Integer integer_from_string(const std::string& s) { return Integer(s); }

Rational product_of(const std::vector<int>& xs) {
  Rational p(1);
  for (int x : xs) p *= x;
  return p;
}

std::size_t hash_int_vector(const std::vector<int>& v, std::size_t seed) {
  std::size_t h = hash_combine(seed, v.size());
  for (int x : v) h = hash_combine(h, static_cast<std::size_t>(static_cast<unsigned>(x)) * 0x100000001b3ULL);
  return h;
}

bool operator==(const T0Term& a, const T0Term& b) {
  return a.t0_exp == b.t0_exp && a.log_pow == b.log_pow && a.coeff == b.coeff;
}

T0Poly::T0Poly(Rational c) {
  if (c != 0) terms_.push_back({std::move(c), 0, 0});
}

T0Poly T0Poly::term(Rational c, int t0_exp, int log_pow) {
  if (log_pow < 0 || log_pow > 1) throw std::domain_error("T0Poly: log power must be 0 or 1");
  T0Poly p;
  if (c != 0) p.terms_.push_back({std::move(c), t0_exp, log_pow});
  return p;
}

bool T0Poly::has_log() const {
  for (const auto& t : terms_)
    if (t.log_pow != 0) return true;
  return false;
}

Rational T0Poly::coeff(int t0_exp, int log_pow) const {
  for (const auto& t : terms_)
    if (t.t0_exp == t0_exp && t.log_pow == log_pow) return t.coeff;
  return Rational(0);
}

void T0Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const T0Term& a, const T0Term& b) {
    if (a.t0_exp != b.t0_exp) return a.t0_exp < b.t0_exp;
    return a.log_pow < b.log_pow;
  });
  std::vector<T0Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().t0_exp == t.t0_exp && out.back().log_pow == t.log_pow) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

T0Poly operator+(const T0Poly& a, const T0Poly& b) {
  T0Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  r.terms_ = a.terms_;
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  r.normalize();
  return r;
}

T0Poly operator-(const T0Poly& a) {
  T0Poly r = a;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

T0Poly operator-(const T0Poly& a, const T0Poly& b) { return a + (-b); }

T0Poly operator*(const T0Poly& a, const T0Poly& b) {
  T0Poly r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      int lp = x.log_pow + y.log_pow;
      if (lp > 1) throw std::domain_error("T0Poly: log power overflow in product");
      r.terms_.push_back({x.coeff * y.coeff, x.t0_exp + y.t0_exp, lp});
    }
  r.normalize();
  return r;
}

T0Poly operator*(const T0Poly& a, const Rational& c) {
  if (c == 0) return T0Poly();
  T0Poly r = a;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

bool operator==(const T0Poly& a, const T0Poly& b) { return a.terms_ == b.terms_; }

T0Poly T0Poly::diff_t0() const {
  T0Poly r;
  for (const auto& t : terms_) {
    if (t.t0_exp != 0) r.terms_.push_back({t.coeff * t.t0_exp, t.t0_exp - 1, t.log_pow});
    if (t.log_pow == 1) r.terms_.push_back({t.coeff, t.t0_exp - 1, 0});
  }
  r.normalize();
  return r;
}

T0Poly T0Poly::shift_t0(int k) const {
  T0Poly r = *this;
  for (auto& t : r.terms_) t.t0_exp += k;
  return r;
}

double T0Poly::eval(double t0) const {
  if (!(t0 > 0)) throw std::domain_error("T0Poly::eval: t0 must be positive");
  double s = 0.0;
  const double lg = std::log(t0);
  for (const auto& t : terms_) {
    double v = to_double(t.coeff) * std::pow(t0, t.t0_exp);
    if (t.log_pow == 1) v *= lg;
    s += v;
  }
  return s;
}

std::string T0Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.str() << ")";
    if (t.t0_exp != 0) os << "*t0^" << t.t0_exp;
    if (t.log_pow == 1) os << "*log(t0)";
  }
  return os.str();
}

}  // namespace taumap
