#pragma once

#include "taumap/series.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <utility>
#include <vector>

namespace taumap {

/// Canonical key of a Taylor coefficient: the unbarred and barred index
/// multisets, each sorted ascending.
struct CoeffKey {
  std::vector<int> unbarred;
  std::vector<int> barred;

  int level_u() const;
  int level_b() const;
  bool operator==(const CoeffKey& o) const { return unbarred == o.unbarred && barred == o.barred; }
};

CoeffKey canonical_key(std::vector<int> unbarred, std::vector<int> barred);

/// One-point functions d0^ell d_s v restricted to the t0 axis, plus d0^2 v.
/// ell = 0 entries hold the restricted d_s v itself.
class CauchyData {
 public:
  void set_one_point(int s, int ell, T0Poly value);
  void set_d0_squared(T0Poly value) { d0_squared_ = std::move(value); }
  void set_d0(T0Poly value) { d0_ = std::move(value); }

  /// Throws std::out_of_range naming the missing (s, ell) entry.
  const T0Poly& one_point(int s, int ell) const;
  const T0Poly& d0_squared() const { return d0_squared_; }
  const T0Poly& d0() const { return d0_; }

 private:
  std::map<std::pair<int, int>, T0Poly> one_point_;
  T0Poly d0_squared_;
  T0Poly d0_;
};

/// Cauchy data of the Riemann-map free energy: d0 v| = -t0 + t0 log t0,
/// d0^2 v| = log t0, and every d0^ell d_s v| (s >= 1) identically zero.
/// Entries are populated for s <= W, ell <= W.
CauchyData riemann_cauchy_data(int W);

/// Axis value d_I dbar_Ib v|_{t0} as a single t0 monomial (closed form when
/// either side is a single index, the N-coefficient engine otherwise).
T0Term axis_mixed_derivative(const std::vector<int>& unbarred, const std::vector<int>& barred);

/// N coefficient of the key: zero unless both sides have equal level i, else
/// the exact rational times t0^(i - (k + kbar) + 2).  Memoized.
T0Term n_coeff(const CoeffKey& key);

/// Evaluate the pure-derivative reconstruction d_{i_1}..d_{i_k} v| on the
/// supplied Cauchy data.
T0Poly reconstruct_pure_derivative(const std::vector<int>& indices, const CauchyData& data);

/// The truncated free energy: (1/2) t0^2 log t0 - (3/4) t0^2 plus all
/// N-coefficient terms with both levels <= W, each divided by the multiset
/// multiplicity factorials.
FormalSeries tau_series(int W);

struct CoeffRow {
  std::vector<int> unbarred;
  std::vector<int> barred;
  Rational value;
  int t0_exp = 0;
};

/// All diagonal keys with level <= W in canonical order (level, then
/// partition enumeration order on each side), zeros included.
std::vector<CoeffRow> coefficient_table(int W);

nlohmann::json coefficient_table_to_json(const std::vector<CoeffRow>& rows);

void clear_coefficient_tables();

}  // namespace taumap
