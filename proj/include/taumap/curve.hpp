#pragma once

#include "taumap/series.hpp"

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace taumap {

/// Closed analytic curve given by a truncated Fourier parameterization
/// z(theta) = sum_m c_m e^{i m theta}.  Must be simple, positively oriented,
/// and enclose the origin.
struct CurveSpec {
  std::vector<std::pair<int, std::complex<double>>> fourier;  // (mode, coefficient)

  std::complex<double> point(double theta) const;
  std::complex<double> derivative(double theta) const;
  int max_mode() const;

  CurveSpec rotated(double alpha) const;  // z -> e^{i alpha} z
  CurveSpec scaled(double lambda) const;  // z -> lambda z
};

CurveSpec curve_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const CurveSpec& c);

CurveSpec circle_curve(double radius);
CurveSpec shifted_disk_curve(std::complex<double> center, double radius);
CurveSpec ellipse_curve(double a, double b);

/// Winding about 0 must be +1 and the sampled polygon must be simple.
/// Throws std::invalid_argument on failure.
void validate_curve(const CurveSpec& curve, int n_samples = 256);

/// Harmonic moments t_0 = area/pi and t_k = (1/2 pi i k) contour integral of
/// z^-k zbar dz, k = 1..K, by the uniform trapezoidal rule (spectrally
/// accurate for analytic curves).  Requires n_quad >= 4 * max_mode + 4.
MomentVector moments_from_curve(const CurveSpec& curve, int K, int n_quad);

nlohmann::json moments_to_json(const MomentVector& m);
MomentVector moments_from_json(const nlohmann::json& j);

}  // namespace taumap
