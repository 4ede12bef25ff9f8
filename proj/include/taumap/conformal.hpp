#pragma once

#include "taumap/curve.hpp"
#include "taumap/series.hpp"

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <string>
#include <vector>

namespace taumap {

/// Exterior map w(z) = z/r + sum_{j>=0} p_j z^-j taking the curve exterior
/// to the exterior of the unit disk.
struct MapSeries {
  double r = 1.0;
  std::vector<std::complex<double>> p;  // p[j] = p_j, j = 0..J

  std::complex<double> apply(std::complex<double> z) const;
};

struct MapDiagnostics {
  double tail_estimate = 0.0;     // magnitude of the last retained coefficient
  double moment_heuristic = 0.0;  // sum_k |t_k| t0^((k-2)/2); large values mean
                                  // the truncated series is outside its comfort zone
  bool warn = false;
  std::string message;
};

/// Build the map from the truncated free energy at the given moments:
/// log w = log z - (1/2) d0^2 v - sum_k z^-k/k d0 d_k v, exponentiated as a
/// power series in 1/z through degree J+1.  K is taken from the moment
/// vector length; requires K <= cutoff and J <= K.
MapSeries map_series(const FormalSeries& v, const MomentVector& m, int J,
                     MapDiagnostics* diag = nullptr);

/// max over boundary samples of | |w(z(theta))| - 1 |.
double boundary_unimodularity(const CurveSpec& curve, const MapSeries& map, int n_samples);

enum class OracleShape { kCircle, kShiftedDisk, kEllipse };

struct OracleParams {
  double radius = 1.0;             // circle / shifted disk
  std::complex<double> center{};   // shifted disk
  double a = 1.0, b = 1.0;         // ellipse semi-axes, a >= b
};

/// Closed-form exterior maps: circle w = z/R, shifted disk w = (z - c)/R,
/// ellipse the inverse Joukowski map w = (z + sqrt(z^2 - a^2 + b^2))/(a + b).
std::complex<double> oracle_map_point(OracleShape shape, const OracleParams& params,
                                      std::complex<double> z);

/// Boundary samples w(z(theta_q)) of the closed-form map on a uniform grid.
std::vector<std::complex<double>> oracle_map(OracleShape shape, const OracleParams& params,
                                             int n_samples);

nlohmann::json map_to_json(const MapSeries& m);

/// CSV rows "theta,re_w,im_w,abs_w_minus_1" for the constructed map sampled
/// on the curve.
std::string boundary_csv(const CurveSpec& curve, const MapSeries& map, int n_samples);

}  // namespace taumap
