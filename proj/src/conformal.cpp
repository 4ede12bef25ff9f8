#include "taumap/conformal.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace taumap {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> MapSeries::apply(std::complex<double> z) const {
  // Horner in 1/z: sum_j p_j z^-j.
  std::complex<double> inv = 1.0 / z;
  std::complex<double> tail = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) tail = tail * inv + *it;
  return z / r + tail;
}

MapSeries map_series(const FormalSeries& v, const MomentVector& m, int J, MapDiagnostics* diag) {
  const int W = v.cutoff();
  const int K = static_cast<int>(m.t.size());
  if (K > W) throw std::invalid_argument("map_series: moment order exceeds the series cutoff");
  if (J > K) throw std::invalid_argument("map_series: J must be <= moment order");
  if (J < 0) throw std::invalid_argument("map_series: J must be >= 0");
  if (!(m.t0 > 0)) throw std::domain_error("map_series: t0 must be positive");

  // Pad the evaluation point to the cutoff; the extra variables multiply
  // nothing after differentiation below level W.
  MomentVector full = m;
  full.t.resize(W, 0.0);
  full.tbar.resize(W, 0.0);

  const FormalSeries d0v = diff(v, Var::t0());
  const std::complex<double> d0sq = eval(diff(d0v, Var::t0()), full);
  const double r = std::exp(0.5 * d0sq.real());

  // u(x) = -sum_{k<=K} a_k x^k with x = 1/z, a_k = (1/k) d0 d_k v at m.
  std::vector<std::complex<double>> u(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k)
    u[k] = -eval(diff(d0v, Var::t(k)), full) / static_cast<double>(k);

  // exp(u) via b_n = (1/n) sum_{k=1..n} k u_k b_{n-k}.
  std::vector<std::complex<double>> bcoef(static_cast<std::size_t>(J) + 2, 0.0);
  bcoef[0] = 1.0;
  for (int n = 1; n <= J + 1; ++n) {
    std::complex<double> acc = 0.0;
    for (int k = 1; k <= std::min(n, K); ++k)
      acc += static_cast<double>(k) * u[k] * bcoef[n - k];
    bcoef[n] = acc / static_cast<double>(n);
  }

  MapSeries out;
  out.r = r;
  out.p.resize(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) out.p[j] = bcoef[j + 1] / r;

  if (diag) {
    diag->tail_estimate = std::abs(bcoef[J + 1]);
    double h = 0.0;
    for (int k = 1; k <= K; ++k)
      h += std::abs(m.t[k - 1]) * std::pow(m.t0, (k - 2) / 2.0);
    diag->moment_heuristic = h;
    diag->warn = h > 0.5 || std::abs(d0sq.imag()) > 1e-9;
    if (diag->warn) {
      std::ostringstream os;
      os << "moments outside the near-circular regime (heuristic " << h << ", Im d0^2 v "
         << d0sq.imag() << "); the truncated series is asymptotic only";
      diag->message = os.str();
    }
  }
  return out;
}

double boundary_unimodularity(const CurveSpec& curve, const MapSeries& map, int n_samples) {
  double worst = 0.0;
  for (int q = 0; q < n_samples; ++q) {
    std::complex<double> w = map.apply(curve.point(kTwoPi * q / n_samples));
    worst = std::max(worst, std::abs(std::abs(w) - 1.0));
  }
  return worst;
}

std::complex<double> oracle_map_point(OracleShape shape, const OracleParams& params,
                                      std::complex<double> z) {
  switch (shape) {
    case OracleShape::kCircle:
      return z / params.radius;
    case OracleShape::kShiftedDisk:
      return (z - params.center) / params.radius;
    case OracleShape::kEllipse: {
      const double a = params.a, b = params.b;
      if (a < b) throw std::invalid_argument("oracle_map: ellipse requires a >= b");
      if (a == b) return z / a;
      const double e2 = a * a - b * b;
      // Branch with sqrt(z^2 - e2) ~ z at infinity.
      std::complex<double> root = z * std::sqrt(1.0 - e2 / (z * z));
      return (z + root) / (a + b);
    }
  }
  throw std::invalid_argument("oracle_map: unknown shape");
}

std::vector<std::complex<double>> oracle_map(OracleShape shape, const OracleParams& params,
                                             int n_samples) {
  CurveSpec curve;
  switch (shape) {
    case OracleShape::kCircle:
      curve = circle_curve(params.radius);
      break;
    case OracleShape::kShiftedDisk:
      curve = shifted_disk_curve(params.center, params.radius);
      break;
    case OracleShape::kEllipse:
      if (params.a == params.b)
        curve = circle_curve(params.a);
      else
        curve = ellipse_curve(params.a, params.b);
      break;
  }
  std::vector<std::complex<double>> out(n_samples);
  for (int q = 0; q < n_samples; ++q)
    out[q] = oracle_map_point(shape, params, curve.point(kTwoPi * q / n_samples));
  return out;
}

nlohmann::json map_to_json(const MapSeries& m) {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& z : m.p) p.push_back({z.real(), z.imag()});
  return nlohmann::json{{"r", m.r}, {"p", p}};
}

std::string boundary_csv(const CurveSpec& curve, const MapSeries& map, int n_samples) {
  std::ostringstream os;
  os.precision(17);
  os << "theta,re_w,im_w,abs_w_minus_1\n";
  for (int q = 0; q < n_samples; ++q) {
    double theta = kTwoPi * q / n_samples;
    std::complex<double> w = map.apply(curve.point(theta));
    os << theta << "," << w.real() << "," << w.imag() << "," << std::abs(w) - 1.0 << "\n";
  }
  return os.str();
}

}  // namespace taumap
