#include "taumap/conformal.hpp"
#include "taumap/curve.hpp"

#include "taumap/coeffs.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace taumap;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}
}  // namespace

TEST_CASE("curve validation") {
  CHECK_NOTHROW(validate_curve(circle_curve(1.0)));
  CHECK_NOTHROW(validate_curve(ellipse_curve(1.0, 0.9)));

  // Winding 2.
  CurveSpec doubled{{{2, {1.0, 0.0}}}};
  CHECK_THROWS_AS(validate_curve(doubled), std::invalid_argument);
  // Reversed orientation.
  CurveSpec reversed{{{-1, {1.0, 0.0}}}};
  CHECK_THROWS_AS(validate_curve(reversed), std::invalid_argument);
  // Origin outside.
  CHECK_THROWS_AS(validate_curve(shifted_disk_curve({2.0, 0.0}, 1.0)), std::invalid_argument);
  // Self-intersecting loop (second harmonic past the simple range).
  CurveSpec limacon{{{1, {1.0, 0.0}}, {2, {0.6, 0.0}}}};
  CHECK_THROWS_AS(validate_curve(limacon), std::invalid_argument);
}

TEST_CASE("moments of the circle") {
  MomentVector m = moments_from_curve(circle_curve(2.0), 4, 256);
  CHECK(m.t0 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(max_abs(m.t) <= 1e-13);
}

TEST_CASE("moments of the shifted disk") {
  // Residue calculus on (1/2 pi i k) contour z^-k (cbar + R^2/(z-c)) dz:
  // t1 = cbar, everything else cancels.
  const std::complex<double> c{0.1, 0.07};
  MomentVector m = moments_from_curve(shifted_disk_curve(c, 1.0), 5, 256);
  CHECK(m.t0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(m.t[0] - std::conj(c)) <= 1e-13);
  for (int k = 2; k <= 5; ++k) CHECK(std::abs(m.t[k - 1]) <= 1e-13);
}

TEST_CASE("moments of the ellipse") {
  // Schwarz function S(z) = (a-b)/(a+b) z + ab/z + O(z^-3) exterior
  // expansion: t0 = ab, t2 = (a-b)/(2(a+b)), all other t_k = 0.
  const double a = 1.0, b = 0.9;
  MomentVector m = moments_from_curve(ellipse_curve(a, b), 6, 512);
  CHECK(m.t0 == doctest::Approx(a * b).epsilon(1e-13));
  CHECK(m.t[1].real() == doctest::Approx((a - b) / (2 * (a + b))).epsilon(1e-12));
  CHECK(std::abs(m.t[1].imag()) <= 1e-14);
  for (int k : {1, 3, 4, 5, 6}) CHECK(std::abs(m.t[k - 1]) <= 1e-13);

  // Spectral accuracy: doubling the grid changes nothing at 12+ digits.
  MomentVector m2 = moments_from_curve(ellipse_curve(a, b), 6, 1024);
  CHECK(std::abs(m.t0 - m2.t0) <= 1e-13);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(m.t[k - 1] - m2.t[k - 1]) <= 1e-13);

  CHECK_THROWS_AS(moments_from_curve(ellipse_curve(a, b), 6, 4), std::invalid_argument);
}

TEST_CASE("map of the circle is exact") {
  FormalSeries v = tau_series(4);
  MomentVector m = moments_from_curve(circle_curve(1.5), 4, 256);
  MapSeries map = map_series(v, m, 4);
  CHECK(map.r == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(max_abs(map.p) <= 1e-12);
  CHECK(boundary_unimodularity(circle_curve(1.5), map, 128) <= 1e-12);
}

TEST_CASE("map of the shifted disk approaches (z - c)/R") {
  const std::complex<double> c{0.05, 0.0};
  CurveSpec curve = shifted_disk_curve(c, 1.0);
  FormalSeries v = tau_series(6);
  MomentVector m = moments_from_curve(curve, 6, 256);
  MapSeries map = map_series(v, m, 6);
  OracleParams params;
  params.center = c;
  params.radius = 1.0;
  double worst = 0;
  for (int q = 0; q < 64; ++q) {
    std::complex<double> z = curve.point(kTwoPi * q / 64);
    worst = std::max(worst,
                     std::abs(map.apply(z) - oracle_map_point(OracleShape::kShiftedDisk, params, z)));
  }
  CHECK(worst <= 1e-6);
  CHECK(map.r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("map of the ellipse approaches the inverse Joukowski map") {
  const double a = 1.0, b = 0.9;
  CurveSpec curve = ellipse_curve(a, b);
  FormalSeries v = tau_series(6);
  MomentVector m = moments_from_curve(curve, 6, 512);
  MapSeries map = map_series(v, m, 6);
  // Conformal radius of the ellipse exterior is (a+b)/2.
  CHECK(map.r == doctest::Approx((a + b) / 2).epsilon(1e-4));
  CHECK(boundary_unimodularity(curve, map, 256) <= 2e-3);
}

TEST_CASE("oracle maps") {
  CHECK(oracle_map_point(OracleShape::kCircle, {.radius = 2.0}, {2.0, 0.0}) ==
        std::complex<double>(1.0, 0.0));
  OracleParams sd;
  sd.center = {0.1, 0.0};
  sd.radius = 1.0;
  CHECK(std::abs(oracle_map_point(OracleShape::kShiftedDisk, sd, {1.1, 0.0}) -
                 std::complex<double>(1.0, 0.0)) <= 1e-15);

  // Degenerate ellipse is the circle map; a < b is rejected.
  OracleParams e;
  e.a = e.b = 1.0;
  CHECK(std::abs(oracle_map_point(OracleShape::kEllipse, e, {2.0, 0.0}) - 2.0) <= 1e-15);
  e.b = 2.0;
  CHECK_THROWS_AS(oracle_map_point(OracleShape::kEllipse, e, {3.0, 0.0}), std::invalid_argument);

  // On the ellipse boundary the exterior map has unit modulus.
  OracleParams ell;
  ell.a = 1.0;
  ell.b = 0.9;
  for (const auto& w : oracle_map(OracleShape::kEllipse, ell, 64))
    CHECK(std::abs(w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wrong conformal radius shows up as the expected modulus error") {
  MapSeries wrong;
  wrong.r = 3.0;  // truth is 1.5
  double err = boundary_unimodularity(circle_curve(1.5), wrong, 64);
  CHECK(err == doctest::Approx(std::abs(1.5 / 3.0 - 1.0)).epsilon(1e-12));
}

TEST_CASE("rotation and scale covariance of moments and boundary error") {
  const double alpha = 0.8, lambda = 1.3;
  CurveSpec base = ellipse_curve(1.0, 0.9);
  const int K = 4;
  MomentVector m = moments_from_curve(base, K, 512);
  MomentVector mrot = moments_from_curve(base.rotated(alpha), K, 512);
  MomentVector mscl = moments_from_curve(base.scaled(lambda), K, 512);

  CHECK(mrot.t0 == doctest::Approx(m.t0).epsilon(1e-13));
  CHECK(mscl.t0 == doctest::Approx(lambda * lambda * m.t0).epsilon(1e-13));
  for (int k = 1; k <= K; ++k) {
    std::complex<double> rot_expect = std::polar(1.0, -k * alpha) * m.t[k - 1];
    CHECK(std::abs(mrot.t[k - 1] - rot_expect) <= 1e-12);
    std::complex<double> scl_expect = std::pow(lambda, 2 - k) * m.t[k - 1];
    CHECK(std::abs(mscl.t[k - 1] - scl_expect) <= 1e-12);
  }

  FormalSeries v = tau_series(4);
  double e0 = boundary_unimodularity(base, map_series(v, m, K), 256);
  double e1 = boundary_unimodularity(base.rotated(alpha), map_series(v, mrot, K), 256);
  double e2 = boundary_unimodularity(base.scaled(lambda), map_series(v, mscl, K), 256);
  CHECK(std::abs(e1 - e0) <= 1e-10);
  CHECK(std::abs(e2 - e0) <= 1e-10);
}

TEST_CASE("map parameter validation") {
  FormalSeries v = tau_series(2);
  MomentVector m = moments_from_curve(circle_curve(1.0), 2, 64);
  CHECK_THROWS_AS(map_series(v, m, 3), std::invalid_argument);  // J > K
  MomentVector big = moments_from_curve(circle_curve(1.0), 4, 64);
  CHECK_THROWS_AS(map_series(v, big, 2), std::invalid_argument);  // K > W
  MomentVector negative = m;
  negative.t0 = -1.0;
  CHECK_THROWS_AS(map_series(v, negative, 2), std::domain_error);
}
