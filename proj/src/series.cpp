#include "taumap/series.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace taumap {

TMonomial canonical_monomial(std::vector<int> unbarred, std::vector<int> barred) {
  for (int k : unbarred)
    if (k < 1) throw std::invalid_argument("TMonomial: indices must be >= 1");
  for (int k : barred)
    if (k < 1) throw std::invalid_argument("TMonomial: indices must be >= 1");
  std::sort(unbarred.begin(), unbarred.end());
  std::sort(barred.begin(), barred.end());
  return {std::move(unbarred), std::move(barred)};
}

TMonomial monomial_product(const TMonomial& a, const TMonomial& b) {
  TMonomial r;
  r.unbarred.reserve(a.unbarred.size() + b.unbarred.size());
  std::merge(a.unbarred.begin(), a.unbarred.end(), b.unbarred.begin(), b.unbarred.end(),
             std::back_inserter(r.unbarred));
  r.barred.reserve(a.barred.size() + b.barred.size());
  std::merge(a.barred.begin(), a.barred.end(), b.barred.begin(), b.barred.end(),
             std::back_inserter(r.barred));
  return r;
}

TMonomial remove_index(const TMonomial& m, int k, bool bar) {
  TMonomial r = m;
  auto& v = bar ? r.barred : r.unbarred;
  auto it = std::find(v.begin(), v.end(), k);
  if (it == v.end()) throw std::invalid_argument("remove_index: index not present");
  v.erase(it);
  return r;
}

bool operator==(const TMonomial& a, const TMonomial& b) {
  return a.unbarred == b.unbarred && a.barred == b.barred;
}

bool operator<(const TMonomial& a, const TMonomial& b) {
  int alu = a.level_u(), blu = b.level_u();
  if (alu != blu) return alu < blu;
  int alb = a.level_b(), blb = b.level_b();
  if (alb != blb) return alb < blb;
  if (a.unbarred != b.unbarred) return a.unbarred < b.unbarred;
  return a.barred < b.barred;
}

MomentVector MomentVector::with_conjugates(double t0, std::vector<std::complex<double>> t) {
  MomentVector m;
  m.t0 = t0;
  m.tbar.reserve(t.size());
  for (const auto& z : t) m.tbar.push_back(std::conj(z));
  m.t = std::move(t);
  return m;
}

std::complex<double> MomentVector::value(const Var& v) const {
  if (v.kind == Var::kT0) return {t0, 0.0};
  const auto& vec = (v.kind == Var::kT) ? t : tbar;
  if (v.index < 1 || static_cast<std::size_t>(v.index) > vec.size())
    throw std::out_of_range("MomentVector: index out of range");
  return vec[v.index - 1];
}

FormalSeries::FormalSeries(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 1) throw std::invalid_argument("FormalSeries: cutoff must be >= 1");
}

FormalSeries FormalSeries::constant(int cutoff, T0Poly c) {
  FormalSeries s(cutoff);
  if (!c.is_zero()) s.terms_.emplace(TMonomial{}, std::move(c));
  return s;
}

FormalSeries FormalSeries::constant(int cutoff, Rational c) {
  return constant(cutoff, T0Poly(std::move(c)));
}

T0Poly FormalSeries::coeff(const TMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? T0Poly() : it->second;
}

void FormalSeries::add_term(const TMonomial& m, const T0Poly& c) {
  if (c.is_zero()) return;
  if (m.level_u() > cutoff_ || m.level_b() > cutoff_) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool FormalSeries::diagonal_support() const {
  for (const auto& [m, c] : terms_)
    if (m.level_u() != m.level_b()) return false;
  return true;
}

std::string FormalSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << "  +  ";
    first = false;
    os << "[" << c.str() << "]";
    for (int k : m.unbarred) os << "*t" << k;
    for (int k : m.barred) os << "*tb" << k;
  }
  return os.str();
}

static void require_same_cutoff(const FormalSeries& a, const FormalSeries& b) {
  if (a.cutoff() != b.cutoff())
    throw std::invalid_argument("FormalSeries: operands must share the cutoff");
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  require_same_cutoff(a, b);
  FormalSeries r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  return r;
}

FormalSeries operator-(const FormalSeries& a) {
  FormalSeries r(a.cutoff());
  for (const auto& [m, c] : a.terms()) r.add_term(m, -c);
  return r;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return a + (-b); }

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  require_same_cutoff(a, b);
  const int W = a.cutoff();
  FormalSeries r(W);
  for (const auto& [ma, ca] : a.terms()) {
    const int lua = ma.level_u(), lba = ma.level_b();
    if (lua > W || lba > W) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (lua + mb.level_u() > W) continue;
      if (lba + mb.level_b() > W) continue;
      r.add_term(monomial_product(ma, mb), ca * cb);
    }
  }
  return r;
}

FormalSeries operator*(const FormalSeries& a, const Rational& c) {
  FormalSeries r(a.cutoff());
  if (c == 0) return r;
  for (const auto& [m, p] : a.terms()) r.add_term(m, p * c);
  return r;
}

FormalSeries operator*(const FormalSeries& a, const T0Poly& c) {
  FormalSeries r(a.cutoff());
  if (c.is_zero()) return r;
  for (const auto& [m, p] : a.terms()) r.add_term(m, p * c);
  return r;
}

bool operator==(const FormalSeries& a, const FormalSeries& b) {
  return a.cutoff() == b.cutoff() && a.terms() == b.terms();
}

FormalSeries diff(const FormalSeries& a, const Var& v) {
  FormalSeries r(a.cutoff());
  if (v.kind == Var::kT0) {
    for (const auto& [m, c] : a.terms()) r.add_term(m, c.diff_t0());
    return r;
  }
  if (v.index < 1 || v.index > a.cutoff())
    throw std::invalid_argument("diff: variable index out of range for this cutoff");
  const bool bar = (v.kind == Var::kTBar);
  for (const auto& [m, c] : a.terms()) {
    int mult = m.count(v.index, bar);
    if (mult == 0) continue;
    r.add_term(remove_index(m, v.index, bar), c * Rational(mult));
  }
  return r;
}

FormalSeries exp_series(const FormalSeries& a) {
  const int W = a.cutoff();
  // Split off the t-free part; it must be exactly kappa * log t0.
  T0Poly head = a.coeff(TMonomial{});
  int kappa = 0;
  {
    T0Poly rest = head;
    for (const auto& t : head.terms()) {
      if (t.log_pow == 1) {
        if (t.t0_exp != 0 || denominator_of(t.coeff) != 1 || t.coeff < 0)
          throw std::domain_error(
              "exp_series: log t0 must appear as a nonnegative integer multiple");
        kappa = static_cast<int>(numerator_of(t.coeff).convert_to<long long>());
        rest = rest - T0Poly::term(t.coeff, t.t0_exp, 1);
      }
    }
    if (!rest.is_zero())
      throw std::domain_error("exp_series: non-exponentiable t-free part " + rest.str());
  }
  FormalSeries x(W);
  for (const auto& [m, c] : a.terms()) {
    if (m.empty()) continue;
    if (c.has_log())
      throw std::domain_error("exp_series: log t0 allowed only in the t-free part");
    x.add_term(m, c);
  }
  FormalSeries sum = FormalSeries::constant(W, Rational(1));
  FormalSeries inc = FormalSeries::constant(W, Rational(1));
  // Every monomial of x has positive level on at least one side, so x^n
  // truncates to zero once n exceeds 2W.
  for (int n = 1; n <= 2 * W + 1 && !inc.is_zero(); ++n) {
    inc = inc * x;
    inc = inc * Rational(Integer(1), Integer(n));
    sum = sum + inc;
  }
  if (kappa == 0) return sum;
  FormalSeries r(W);
  for (const auto& [m, c] : sum.terms()) r.add_term(m, c.shift_t0(kappa));
  return r;
}

std::complex<double> eval(const FormalSeries& a, const MomentVector& m) {
  if (!(m.t0 > 0)) throw std::domain_error("eval: t0 must be positive");
  const int W = a.cutoff();
  if (static_cast<int>(m.t.size()) < W || static_cast<int>(m.tbar.size()) < W)
    throw std::invalid_argument("eval: moment vector shorter than the cutoff");
  std::complex<double> s = 0.0;
  for (const auto& [mon, c] : a.terms()) {
    std::complex<double> v = c.eval(m.t0);
    for (int k : mon.unbarred) v *= m.t[k - 1];
    for (int k : mon.barred) v *= m.tbar[k - 1];
    s += v;
  }
  return s;
}

FormalSeries truncate(const FormalSeries& a, int cutoff) {
  FormalSeries r(cutoff);
  for (const auto& [m, c] : a.terms()) r.add_term(m, c);
  return r;
}

nlohmann::json series_to_json(const FormalSeries& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& t : c.terms())
      poly.push_back({to_decimal_string(numerator_of(t.coeff)),
                      to_decimal_string(denominator_of(t.coeff)), t.t0_exp, t.log_pow});
    terms.push_back({m.unbarred, m.barred, poly});
  }
  return nlohmann::json{{"cutoff", a.cutoff()}, {"terms", terms}};
}

FormalSeries series_from_json(const nlohmann::json& j) {
  FormalSeries s(j.at("cutoff").get<int>());
  for (const auto& entry : j.at("terms")) {
    TMonomial m = canonical_monomial(entry.at(0).get<std::vector<int>>(),
                                     entry.at(1).get<std::vector<int>>());
    T0Poly c;
    for (const auto& t : entry.at(2)) {
      Rational q(integer_from_string(t.at(0).get<std::string>()),
                 integer_from_string(t.at(1).get<std::string>()));
      c = c + T0Poly::term(q, t.at(2).get<int>(), t.at(3).get<int>());
    }
    s.add_term(m, c);
  }
  return s;
}

}  // namespace taumap
