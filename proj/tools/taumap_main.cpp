#include "taumap/coeffs.hpp"
#include "taumap/conformal.hpp"
#include "taumap/curve.hpp"
#include "taumap/hirota.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using taumap::FormalSeries;
using taumap::MomentVector;

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content << "\n";
  else
    write_atomic(path, content);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int run_coeffs(int cutoff, const std::string& out) {
  auto rows = taumap::coefficient_table(cutoff);
  emit(out, taumap::coefficient_table_to_json(rows).dump(2));
  return 0;
}

int run_verify(int cutoff, const std::string& out, bool mutate, std::uint64_t seed) {
  FormalSeries v = taumap::tau_series(cutoff);
  nlohmann::json mutation_info;
  if (mutate) {
    auto [mutated, info] = taumap::mutate_coefficient(v, seed);
    v = mutated;
    mutation_info = {{"unbarred", info.monomial.unbarred},
                     {"barred", info.monomial.barred},
                     {"t0_exp", info.t0_exp},
                     {"log_pow", info.log_pow},
                     {"delta_num", taumap::to_decimal_string(taumap::numerator_of(info.delta))},
                     {"delta_den", taumap::to_decimal_string(taumap::denominator_of(info.delta))}};
    std::cerr << "verify: mutated one coefficient (seed " << seed << ")\n";
  }
  auto reports = taumap::verify_suite(v);
  bool all_pass = true;
  nlohmann::json jreports = nlohmann::json::array();
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass();
    jreports.push_back(taumap::report_to_json(r));
    std::cout << (r.pass() ? "pass  " : "FAIL  ") << r.equation << " (order " << r.order << ")";
    if (!r.error.empty()) std::cout << "  [" << r.error << "]";
    std::cout << "\n";
  }
  nlohmann::json summary{{"cutoff", cutoff}, {"pass", all_pass}, {"reports", jreports}};
  if (mutate) summary["mutation"] = mutation_info;
  if (!out.empty()) write_atomic(out, summary.dump(2));
  return all_pass ? 0 : 1;
}

int run_moments(const std::string& curve_path, int korder, int nquad, const std::string& out) {
  taumap::CurveSpec curve = taumap::curve_from_json(load_json(curve_path));
  MomentVector m = taumap::moments_from_curve(curve, korder, nquad);
  emit(out, taumap::moments_to_json(m).dump(2));
  return 0;
}

int run_map(const std::string& curve_path, int cutoff, int korder, int jorder, int nquad,
            int samples, const std::string& out, const std::string& csv) {
  taumap::CurveSpec curve = taumap::curve_from_json(load_json(curve_path));
  MomentVector m = taumap::moments_from_curve(curve, korder, nquad);
  FormalSeries v = taumap::tau_series(cutoff);
  taumap::MapDiagnostics diag;
  taumap::MapSeries map = taumap::map_series(v, m, jorder, &diag);
  if (diag.warn) std::cerr << "map: warning: " << diag.message << "\n";
  double err = taumap::boundary_unimodularity(curve, map, samples);
  std::cout << "map: r = " << map.r << ", max | |w|-1 | = " << err << " over " << samples
            << " boundary samples\n";
  emit(out, taumap::map_to_json(map).dump(2));
  if (!csv.empty()) write_atomic(csv, taumap::boundary_csv(curve, map, samples));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor coefficients of the dispersionless 2D-Toda free energy, Hirota residual "
               "verification, and exterior conformal maps from harmonic moments"};
  app.require_subcommand(1);

  struct {
    int cutoff = 8;
    std::string out;
  } co;
  auto* coeffs = app.add_subcommand("coeffs", "emit the N-coefficient table as JSON");
  coeffs->add_option("--cutoff", co.cutoff, "max level W")->check(CLI::PositiveNumber);
  coeffs->add_option("--out", co.out, "output path (stdout when omitted)");

  struct {
    int cutoff = 6;
    std::string out;
    bool mutate = false;
    std::uint64_t seed = 1;
  } vf;
  auto* verify = app.add_subcommand("verify", "run the residual verification battery");
  verify->add_option("--cutoff", vf.cutoff, "max level W")->check(CLI::PositiveNumber);
  verify->add_option("--out", vf.out, "report JSON path");
  verify->add_flag("--mutate", vf.mutate, "perturb one coefficient first (test hook)");
  verify->add_option("--seed", vf.seed, "mutation seed");

  struct {
    std::string curve, out;
    int korder = 8;
    int nquad = 512;
  } mo;
  auto* moments = app.add_subcommand("moments", "harmonic moments of a curve");
  moments->add_option("--curve", mo.curve, "curve spec JSON")->required();
  moments->add_option("--korder", mo.korder, "number of moments K");
  moments->add_option("--nquad", mo.nquad, "quadrature nodes");
  moments->add_option("--out", mo.out, "output path (stdout when omitted)");

  struct {
    std::string curve, out, csv;
    int cutoff = 8;
    int korder = -1;
    int jorder = -1;
    int nquad = 512;
    int samples = 512;
  } mp;
  auto* mapcmd = app.add_subcommand("map", "exterior conformal map from a curve");
  mapcmd->add_option("--curve", mp.curve, "curve spec JSON")->required();
  mapcmd->add_option("--cutoff", mp.cutoff, "max level W")->check(CLI::PositiveNumber);
  mapcmd->add_option("--korder", mp.korder, "number of moments K (default: cutoff)");
  mapcmd->add_option("--jorder", mp.jorder, "map coefficients J (default: korder)");
  mapcmd->add_option("--nquad", mp.nquad, "quadrature nodes");
  mapcmd->add_option("--samples", mp.samples, "boundary samples");
  mapcmd->add_option("--out", mp.out, "map JSON path (stdout when omitted)");
  mapcmd->add_option("--csv", mp.csv, "boundary sample CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (coeffs->parsed()) return run_coeffs(co.cutoff, co.out);
    if (verify->parsed()) return run_verify(vf.cutoff, vf.out, vf.mutate, vf.seed);
    if (moments->parsed()) return run_moments(mo.curve, mo.korder, mo.nquad, mo.out);
    if (mapcmd->parsed()) {
      if (mp.korder < 0) mp.korder = mp.cutoff;
      if (mp.jorder < 0) mp.jorder = mp.korder;
      if (mp.korder > mp.cutoff) throw std::invalid_argument("map: need korder <= cutoff");
      if (mp.jorder > mp.korder) throw std::invalid_argument("map: need jorder <= korder");
      return run_map(mp.curve, mp.cutoff, mp.korder, mp.jorder, mp.nquad, mp.samples, mp.out,
                     mp.csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
