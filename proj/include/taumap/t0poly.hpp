#pragma once

#include "taumap/rational.hpp"

#include <complex>
#include <vector>

namespace taumap {

/// One term c * t0^e * (log t0)^p with p in {0, 1}.
struct T0Term {
  Rational coeff;
  int t0_exp = 0;
  int log_pow = 0;

  bool is_zero() const { return coeff == 0; }
};

bool operator==(const T0Term& a, const T0Term& b);

/// Polynomial in t0 (integer exponents of either sign) extended by a single
/// log t0 generator.  Terms are kept sorted by (t0_exp, log_pow) with no zero
/// coefficients; the zero polynomial is the empty term list.
class T0Poly {
 public:
  T0Poly() = default;
  explicit T0Poly(Rational c);
  static T0Poly term(Rational c, int t0_exp, int log_pow = 0);

  const std::vector<T0Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_log() const;

  /// Coefficient of t0^e (log t0)^p, zero if absent.
  Rational coeff(int t0_exp, int log_pow = 0) const;

  friend T0Poly operator+(const T0Poly& a, const T0Poly& b);
  friend T0Poly operator-(const T0Poly& a, const T0Poly& b);
  friend T0Poly operator-(const T0Poly& a);
  /// Throws std::domain_error when the product would carry (log t0)^2.
  friend T0Poly operator*(const T0Poly& a, const T0Poly& b);
  friend T0Poly operator*(const T0Poly& a, const Rational& c);
  friend bool operator==(const T0Poly& a, const T0Poly& b);

  /// d/dt0; log t0 differentiates to 1/t0.
  T0Poly diff_t0() const;

  /// Multiply by t0^k.
  T0Poly shift_t0(int k) const;

  /// Evaluate at a positive t0 (log evaluated as natural log).
  /// Throws std::domain_error for t0 <= 0.
  double eval(double t0) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<T0Term> terms_;
};

}  // namespace taumap
