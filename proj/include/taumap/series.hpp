#pragma once

#include "taumap/monomial.hpp"
#include "taumap/t0poly.hpp"

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <map>
#include <vector>

namespace taumap {

/// Variable of the ring: t0, t_k or tbar_k.
struct Var {
  enum Kind { kT0, kT, kTBar } kind = kT0;
  int index = 0;  // k for kT / kTBar

  static Var t0() { return {kT0, 0}; }
  static Var t(int k) { return {kT, k}; }
  static Var tbar(int k) { return {kTBar, k}; }
};

/// Numeric point (t0, t_1..t_K, tbar_1..tbar_K) at which series are evaluated.
/// For curve-derived data tbar_k = conj(t_k).
struct MomentVector {
  double t0 = 0.0;
  std::vector<std::complex<double>> t;
  std::vector<std::complex<double>> tbar;

  static MomentVector with_conjugates(double t0, std::vector<std::complex<double>> t);
  std::complex<double> value(const Var& v) const;
};

/// Truncated formal power series in t_1, tbar_1, t_2, tbar_2, ... with T0Poly
/// coefficients.  Terms with unbarred level > cutoff or barred level > cutoff
/// are dropped; stored coefficients are exact.  Values are immutable once
/// built; all operations are pure.
class FormalSeries {
 public:
  explicit FormalSeries(int cutoff);

  static FormalSeries constant(int cutoff, T0Poly c);
  static FormalSeries constant(int cutoff, Rational c);

  int cutoff() const { return cutoff_; }
  const std::map<TMonomial, T0Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  T0Poly coeff(const TMonomial& m) const;

  /// Accumulate c into the coefficient of m (dropped beyond the cutoff).
  void add_term(const TMonomial& m, const T0Poly& c);

  /// True when every stored term has equal unbarred and barred level.
  bool diagonal_support() const;

  std::string str() const;

 private:
  int cutoff_;
  std::map<TMonomial, T0Poly> terms_;
};

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator-(const FormalSeries& a);
FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator*(const FormalSeries& a, const Rational& c);
FormalSeries operator*(const FormalSeries& a, const T0Poly& c);
bool operator==(const FormalSeries& a, const FormalSeries& b);

/// Exact partial derivative by t0, t_k or tbar_k (k <= cutoff).
FormalSeries diff(const FormalSeries& a, const Var& v);

/// exp of kappa*log t0 + R where kappa is a nonnegative integer, R is
/// log-free and R has no t-free part.  Returns t0^kappa * exp(R) with the
/// Taylor sum truncated by the cutoff.  Violations of the decomposition are
/// rejected with std::domain_error.
FormalSeries exp_series(const FormalSeries& a);

/// Floating-point evaluation at a moment vector (t0 > 0 required).
std::complex<double> eval(const FormalSeries& a, const MomentVector& m);

/// Re-truncate to a smaller cutoff.
FormalSeries truncate(const FormalSeries& a, int cutoff);

nlohmann::json series_to_json(const FormalSeries& a);
FormalSeries series_from_json(const nlohmann::json& j);

}  // namespace taumap
