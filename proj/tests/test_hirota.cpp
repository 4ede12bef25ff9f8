#include "taumap/hirota.hpp"

#include "taumap/coeffs.hpp"

#include <doctest.h>

#include <random>

using namespace taumap;

namespace {

FormalSeries mono(int W, std::vector<int> u, std::vector<int> b, Rational c, int t0_exp = 0,
                  int log_pow = 0) {
  FormalSeries s(W);
  s.add_term(canonical_monomial(std::move(u), std::move(b)),
             T0Poly::term(std::move(c), t0_exp, log_pow));
  return s;
}

FormalSeries bar_swap(const FormalSeries& v) {
  FormalSeries out(v.cutoff());
  for (const auto& [m, c] : v.terms()) out.add_term(TMonomial{m.barred, m.unbarred}, c);
  return out;
}

bool all_pass(const std::vector<ResidualReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass()) return false;
  return true;
}

// Window-stability comparison of one equation between cutoffs W and W+1:
// inside the trusted region the expansions must be identical.
void check_sides_stable(int eq, const FormalSeries& v_small, const FormalSeries& v_large) {
  const int W = v_small.cutoff();
  EquationSides small = hirota_sides(v_small, eq);
  EquationSides large = hirota_sides(v_large, eq);
  auto filter = [&](const FormalSeries& s, int a, int b) {
    FormalSeries out(W);
    for (const auto& [m, c] : s.terms()) {
      if (eq == 3 && (m.level_u() + a > W || m.level_b() + b > W)) continue;
      out.add_term(m, c);
    }
    return out;
  };
  auto compare = [&](const BivariateSeries& s, const BivariateSeries& l) {
    for (const auto& [cell, series] : s.cells()) {
      if (eq == 3) {
        if (cell.first > W || cell.second > W) continue;
      } else if (cell.first + cell.second > W) {
        continue;
      }
      CAPTURE(eq);
      CAPTURE(cell.first);
      CAPTURE(cell.second);
      CHECK(filter(series, cell.first, cell.second) ==
            filter(truncate(l.cell(cell.first, cell.second), W), cell.first, cell.second));
    }
  };
  compare(small.lhs, large.lhs);
  compare(small.rhs, large.rhs);
}

}  // namespace

TEST_CASE("apply_D coefficients") {
  const int W = 2;
  FormalSeries v = mono(W, {1}, {1}, Rational(1), 1);  // t0 t1 tb1
  BivariateSeries d = apply_D(v, false, 2);
  CHECK(d.cell(1, 0) == mono(W, {}, {1}, Rational(1), 1));
  CHECK(d.cell(2, 0).is_zero());

  CHECK(apply_D(FormalSeries::constant(W, Rational(5)), false, 2).cells().empty());

  // 1/k factor: coefficient of z^-2 for t0^2 t2 tb2 is (1/2) t0^2 tb2.
  FormalSeries u = mono(W, {2}, {2}, Rational(1), 2);
  CHECK(apply_D(u, false, 2).cell(2, 0) == mono(W, {}, {2}, Rational(1, 2), 2));

  CHECK_THROWS_AS(apply_D(v, false, W + 1), std::invalid_argument);
}

TEST_CASE("toda field residual") {
  FormalSeries v2 = tau_series(2);
  CHECK(toda_field_residual(v2).pass());
  CHECK(toda_field_residual(tau_series(4)).pass());

  // Perturbing the t1 tb1 coefficient by +1 leaves residual exactly 1 at the
  // constant monomial.
  FormalSeries bad = v2 + mono(2, {1}, {1}, Rational(1));
  ResidualReport r = toda_field_residual(bad);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].monomial.empty());
  CHECK(r.entries[0].value == T0Poly(Rational(1)));
}

TEST_CASE("hirota residuals vanish on the tau series") {
  for (int W : {2, 4}) {
    FormalSeries v = tau_series(W);
    for (int eq = 1; eq <= 3; ++eq) {
      ResidualReport r = hirota_residual(v, eq, W);
      CAPTURE(W);
      CAPTURE(eq);
      CHECK(r.pass());
    }
  }
  FormalSeries v = tau_series(2);
  CHECK_THROWS_AS(hirota_residual(v, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(hirota_residual(v, 4, 2), std::invalid_argument);
  FormalSeries skew = mono(2, {1}, {}, Rational(1));
  CHECK_THROWS_AS(hirota_residual(skew, 1, 2), std::invalid_argument);
}

TEST_CASE("equation 2 is the bar-relabeled mirror of equation 1") {
  // Perturb an asymmetric coefficient so the residuals are nonempty.
  FormalSeries v = tau_series(3) + mono(3, {1, 2}, {3}, Rational(1, 3), 1);
  ResidualReport eq2 = hirota_residual(v, 2, 3);
  ResidualReport eq1_swapped = hirota_residual(bar_swap(v), 1, 3);
  CHECK(!eq2.entries.empty());
  REQUIRE(eq2.entries.size() == eq1_swapped.entries.size());
  for (std::size_t i = 0; i < eq2.entries.size(); ++i) {
    CHECK(eq2.entries[i].a == eq1_swapped.entries[i].a);
    CHECK(eq2.entries[i].b == eq1_swapped.entries[i].b);
    CHECK(eq2.entries[i].monomial ==
          TMonomial{eq1_swapped.entries[i].monomial.barred, eq1_swapped.entries[i].monomial.unbarred});
    CHECK(eq2.entries[i].value == eq1_swapped.entries[i].value);
  }
}

TEST_CASE("dkp route polynomials") {
  // d1 d1 v = (1/2) X_2 - (1/2) X_1^2 from both routes.
  OnePointPoly expected{{{2}, Rational(1, 2)}, {{1, 1}, Rational(-1, 2)}};
  CHECK(didj_via_level_one(1, 1) == expected);
  CHECK(didj_via_axis(1, 1) == expected);

  for (int i = 1; i <= 3; ++i)
    for (int j = i; i + j <= 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(didj_via_level_one(i, j) == didj_via_axis(i, j));
    }

  // Randomized exact evaluations agree as well.
  std::mt19937 rng(321);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Rational> values;
    for (int p = 0; p < 6; ++p) values.emplace_back(num(rng), den(rng));
    for (int i = 1; i <= 3; ++i)
      for (int j = i; i + j <= 6; ++j)
        CHECK(eval_one_point_poly(didj_via_level_one(i, j), values) ==
              eval_one_point_poly(didj_via_axis(i, j), values));
  }
}

TEST_CASE("dkp consistency on the tau series") {
  FormalSeries v4 = tau_series(4);
  CHECK(dkp_consistency(1, 1, v4).pass());
  CHECK(dkp_consistency(1, 2, v4).pass());
  CHECK(dkp_consistency(2, 2, v4).pass());
  CHECK_THROWS_AS(dkp_consistency(2, 3, v4), std::invalid_argument);
}

TEST_CASE("homogeneity check") {
  CHECK(homogeneity_check(tau_series(4)).pass());

  FormalSeries bad = tau_series(2) + mono(2, {1}, {1}, Rational(1), 3);  // t0^3 t1 tb1
  ResidualReport r = homogeneity_check(bad);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].monomial == canonical_monomial({1}, {1}));

  // A log term anywhere but the (1/2) t0^2 log t0 head is flagged.
  FormalSeries bad_log = tau_series(2) + mono(2, {2}, {2}, Rational(1), 0, 1);
  CHECK(!homogeneity_check(bad_log).pass());
}

TEST_CASE("mutation sensitivity at small cutoff") {
  FormalSeries v = tau_series(3);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto [mutated, info] = mutate_coefficient(v, seed);
    CHECK(info.delta != 0);
    CHECK(!(mutated == v));
    CAPTURE(seed);
    CHECK(!all_pass(verify_suite(mutated)));
  }
  CHECK(all_pass(verify_suite(v)));
}

TEST_CASE("window stability between consecutive cutoffs") {
  FormalSeries v3 = tau_series(3);
  FormalSeries v4 = tau_series(4);
  for (int eq = 1; eq <= 3; ++eq) check_sides_stable(eq, v3, v4);
}
