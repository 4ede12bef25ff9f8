#include "taumap/curve.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace taumap {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> CurveSpec::point(double theta) const {
  std::complex<double> z = 0.0;
  for (const auto& [m, c] : fourier) z += c * std::polar(1.0, m * theta);
  return z;
}

std::complex<double> CurveSpec::derivative(double theta) const {
  std::complex<double> z = 0.0;
  for (const auto& [m, c] : fourier)
    z += c * std::complex<double>(0.0, m) * std::polar(1.0, m * theta);
  return z;
}

int CurveSpec::max_mode() const {
  int mm = 0;
  for (const auto& [m, c] : fourier) mm = std::max(mm, std::abs(m));
  return mm;
}

CurveSpec CurveSpec::rotated(double alpha) const {
  CurveSpec out = *this;
  const std::complex<double> phase = std::polar(1.0, alpha);
  for (auto& [m, c] : out.fourier) c *= phase;
  return out;
}

CurveSpec CurveSpec::scaled(double lambda) const {
  CurveSpec out = *this;
  for (auto& [m, c] : out.fourier) c *= lambda;
  return out;
}

CurveSpec curve_from_json(const nlohmann::json& j) {
  CurveSpec c;
  for (const auto& row : j.at("fourier"))
    c.fourier.emplace_back(row.at(0).get<int>(),
                           std::complex<double>(row.at(1).get<double>(), row.at(2).get<double>()));
  return c;
}

nlohmann::json curve_to_json(const CurveSpec& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [m, z] : c.fourier) rows.push_back({m, z.real(), z.imag()});
  return nlohmann::json{{"fourier", rows}};
}

CurveSpec circle_curve(double radius) { return {{{1, {radius, 0.0}}}}; }

CurveSpec shifted_disk_curve(std::complex<double> center, double radius) {
  return {{{0, center}, {1, {radius, 0.0}}}};
}

CurveSpec ellipse_curve(double a, double b) {
  return {{{1, {(a + b) / 2.0, 0.0}}, {-1, {(a - b) / 2.0, 0.0}}}};
}

void validate_curve(const CurveSpec& curve, int n_samples) {
  if (curve.fourier.empty()) throw std::invalid_argument("curve: no Fourier modes");
  if (n_samples < 16) n_samples = 16;
  std::vector<std::complex<double>> z(n_samples);
  for (int q = 0; q < n_samples; ++q) {
    z[q] = curve.point(kTwoPi * q / n_samples);
    if (std::abs(z[q]) < 1e-12)
      throw std::invalid_argument("curve: passes through the origin");
  }
  // Winding about 0 must be +1 (0 inside, positive orientation).
  double total_arg = 0.0;
  for (int q = 0; q < n_samples; ++q) {
    std::complex<double> ratio = z[(q + 1) % n_samples] / z[q];
    total_arg += std::arg(ratio);
  }
  long winding = std::lround(total_arg / kTwoPi);
  if (winding != 1)
    throw std::invalid_argument("curve: winding about the origin is " + std::to_string(winding) +
                                ", expected +1");
  // Sampled polygon must be simple.
  auto orient = [](std::complex<double> p, std::complex<double> q, std::complex<double> r) {
    double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
               (q.imag() - p.imag()) * (r.real() - p.real());
    return (v > 0) - (v < 0);
  };
  auto segments_cross = [&](int i, int j) {
    auto a = z[i], b = z[(i + 1) % n_samples];
    auto c = z[j], d = z[(j + 1) % n_samples];
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
  };
  for (int i = 0; i < n_samples; ++i) {
    for (int j = i + 2; j < n_samples; ++j) {
      if (i == 0 && j == n_samples - 1) continue;  // adjacent around the seam
      if (segments_cross(i, j))
        throw std::invalid_argument("curve: self-intersection detected on the sample grid");
    }
  }
}

MomentVector moments_from_curve(const CurveSpec& curve, int K, int n_quad) {
  if (K < 0) throw std::invalid_argument("moments_from_curve: K must be >= 0");
  const int min_quad = 4 * curve.max_mode() + 4;
  if (n_quad < min_quad)
    throw std::invalid_argument("moments_from_curve: n_quad must be >= 4*max_mode + 4 = " +
                                std::to_string(min_quad));
  validate_curve(curve);

  std::vector<std::complex<double>> z(n_quad), dz(n_quad);
  for (int q = 0; q < n_quad; ++q) {
    double theta = kTwoPi * q / n_quad;
    z[q] = curve.point(theta);
    dz[q] = curve.derivative(theta);
  }
  const std::complex<double> inv_i(0.0, -1.0);  // 1/i

  std::complex<double> t0_acc = 0.0;
  for (int q = 0; q < n_quad; ++q) t0_acc += std::conj(z[q]) * dz[q];
  std::complex<double> t0 = inv_i * t0_acc / static_cast<double>(n_quad);
  if (!(t0.real() > 0))
    throw std::invalid_argument("moments_from_curve: nonpositive area");

  std::vector<std::complex<double>> t(K);
  for (int k = 1; k <= K; ++k) {
    std::complex<double> acc = 0.0;
    for (int q = 0; q < n_quad; ++q) acc += std::pow(z[q], -k) * std::conj(z[q]) * dz[q];
    t[k - 1] = inv_i * acc / static_cast<double>(n_quad * k);
  }
  return MomentVector::with_conjugates(t0.real(), std::move(t));
}

nlohmann::json moments_to_json(const MomentVector& m) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& z : m.t) t.push_back({z.real(), z.imag()});
  return nlohmann::json{{"t0", m.t0}, {"t", t}};
}

MomentVector moments_from_json(const nlohmann::json& j) {
  std::vector<std::complex<double>> t;
  for (const auto& row : j.at("t"))
    t.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
  return MomentVector::with_conjugates(j.at("t0").get<double>(), std::move(t));
}

}  // namespace taumap
