#pragma once

#include "taumap/series.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace taumap {

struct ResidualEntry {
  int a = 0;
  int b = 0;
  TMonomial monomial;
  T0Poly value;
};

struct ResidualReport {
  std::string equation;
  int order = 0;
  std::vector<ResidualEntry> entries;
  std::string error;  // structural rejection raised by a check, if any

  bool pass() const { return entries.empty() && error.empty(); }
};

nlohmann::json report_to_json(const ResidualReport& r);

/// Laurent-coefficient grid: cell (a, b) holds the series coefficient of
/// z^-a xi^-b.  Indices may be -1 after multiplication by z or xi.
class BivariateSeries {
 public:
  explicit BivariateSeries(int cutoff) : cutoff_(cutoff) {}

  int cutoff() const { return cutoff_; }
  const std::map<std::pair<int, int>, FormalSeries>& cells() const { return cells_; }
  FormalSeries cell(int a, int b) const;
  void add_cell(int a, int b, const FormalSeries& s);

 private:
  int cutoff_;
  std::map<std::pair<int, int>, FormalSeries> cells_;
};

/// Cells (k, 0) (axis 0) or (0, k) (axis 1) for k = 1..order holding
/// (1/k) d v / d t_k (unbarred) or (1/k) d v / d tbar_k (barred).
BivariateSeries apply_D(const FormalSeries& v, bool barred, int order, int axis = 0);

/// exp of a grid with no (0, 0) cell, keeping cells with a <= max_a,
/// b <= max_b, a + b <= max_sum.
BivariateSeries exp_cells(const BivariateSeries& x, int max_a, int max_b, int max_sum);

struct EquationSides {
  BivariateSeries lhs;
  BivariateSeries rhs;
};

/// Both sides of dispersionless Hirota equation eq in {1, 2, 3}, expanded
/// over the cell grid.  The input series must have diagonal level support
/// (the tau series and its coefficient mutations do).
EquationSides hirota_sides(const FormalSeries& v, int eq);

/// Exact residual of equation eq on cells with a + b <= order (order <= W),
/// restricted to monomials that the truncation provably determines.
ResidualReport hirota_residual(const FormalSeries& v, int eq, int order);

/// Leading Toda field check d1 dbar1 v = exp(d0^2 v), reported for monomials
/// of level <= W-1 on each side.
ResidualReport toda_field_residual(const FormalSeries& v);

/// Polynomial in the one-point variables X_p = d0 d_p v, keyed by the sorted
/// multiset of p's.
using OnePointPoly = std::map<std::vector<int>, Rational>;

/// d_i d_j v expanded through the level-one derivatives d_1 d_s v, each then
/// rewritten in the X_p.
OnePointPoly didj_via_level_one(int i, int j);
/// d_i d_j v written directly in the X_p through the pairwise coefficients.
OnePointPoly didj_via_axis(int i, int j);

Rational eval_one_point_poly(const OnePointPoly& poly, const std::vector<Rational>& values);

/// Compares the two routes as polynomials, as series evaluated on v, and
/// against the direct derivative of v.
ResidualReport dkp_consistency(int i, int j, const FormalSeries& v);

/// Terms violating 2*t0_exp + sum(2 - i_j) + sum(2 - ibar_j) = 4; the single
/// log term must be exactly the (1/2) t0^2 log t0 head.
ResidualReport homogeneity_check(const FormalSeries& v);

struct Mutation {
  TMonomial monomial;
  int t0_exp = 0;
  int log_pow = 0;
  Rational delta;
};

/// Perturb one stored coefficient of v by a random nonzero rational.
std::pair<FormalSeries, Mutation> mutate_coefficient(const FormalSeries& v, std::uint64_t seed);

/// The full battery: toda, equations 1-3 at order W, homogeneity, and the
/// dKP cross-checks for i <= j, i + j <= W.  Structural rejections raised by
/// a check are recorded on its report rather than propagated.
std::vector<ResidualReport> verify_suite(const FormalSeries& v);

}  // namespace taumap
