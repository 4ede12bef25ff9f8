#include "taumap/hirota.hpp"

#include "taumap/compositions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace taumap {

nlohmann::json report_to_json(const ResidualReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& t : e.value.terms())
      poly.push_back({to_decimal_string(numerator_of(t.coeff)),
                      to_decimal_string(denominator_of(t.coeff)), t.t0_exp, t.log_pow});
    entries.push_back({{"a", e.a},
                       {"b", e.b},
                       {"unbarred", e.monomial.unbarred},
                       {"barred", e.monomial.barred},
                       {"value", poly}});
  }
  nlohmann::json out{{"equation", r.equation},
                     {"order", r.order},
                     {"pass", r.pass()},
                     {"entries", entries}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

FormalSeries BivariateSeries::cell(int a, int b) const {
  auto it = cells_.find({a, b});
  return it == cells_.end() ? FormalSeries(cutoff_) : it->second;
}

void BivariateSeries::add_cell(int a, int b, const FormalSeries& s) {
  if (s.is_zero()) return;
  auto [it, inserted] = cells_.emplace(std::make_pair(a, b), s);
  if (!inserted) {
    it->second = it->second + s;
    if (it->second.is_zero()) cells_.erase(it);
  }
}

BivariateSeries apply_D(const FormalSeries& v, bool barred, int order, int axis) {
  if (order < 0 || order > v.cutoff())
    throw std::invalid_argument("apply_D: order must be in [0, cutoff]");
  BivariateSeries out(v.cutoff());
  for (int k = 1; k <= order; ++k) {
    FormalSeries d = diff(v, barred ? Var::tbar(k) : Var::t(k)) * Rational(Integer(1), Integer(k));
    if (axis == 0)
      out.add_cell(k, 0, d);
    else
      out.add_cell(0, k, d);
  }
  return out;
}

namespace {

BivariateSeries mul_cells(const BivariateSeries& x, const BivariateSeries& y, int max_a, int max_b,
                          int max_sum) {
  BivariateSeries out(x.cutoff());
  for (const auto& [ca, sa] : x.cells()) {
    for (const auto& [cb, sb] : y.cells()) {
      int a = ca.first + cb.first, b = ca.second + cb.second;
      if (a > max_a || b > max_b || a + b > max_sum) continue;
      out.add_cell(a, b, sa * sb);
    }
  }
  return out;
}

BivariateSeries negate_cells(const BivariateSeries& x) {
  BivariateSeries out(x.cutoff());
  for (const auto& [c, s] : x.cells()) out.add_cell(c.first, c.second, -s);
  return out;
}

}  // namespace

BivariateSeries exp_cells(const BivariateSeries& x, int max_a, int max_b, int max_sum) {
  if (x.cells().count({0, 0}))
    throw std::domain_error("exp_cells: the (0,0) cell must be absent");
  const int W = x.cutoff();
  BivariateSeries result(W);
  result.add_cell(0, 0, FormalSeries::constant(W, Rational(1)));
  BivariateSeries power = result;
  for (int n = 1; n <= max_sum + 1; ++n) {
    power = mul_cells(power, x, max_a, max_b, max_sum);
    if (power.cells().empty()) break;
    Rational inv_n(Integer(1), Integer(n));
    BivariateSeries scaled(W);
    for (const auto& [c, s] : power.cells()) scaled.add_cell(c.first, c.second, s * inv_n);
    power = scaled;
    for (const auto& [c, s] : power.cells()) result.add_cell(c.first, c.second, s);
  }
  return result;
}

namespace {

void require_diagonal(const FormalSeries& v, const char* who) {
  if (!v.diagonal_support())
    throw std::invalid_argument(std::string(who) +
                                ": series must have diagonal (equal-level) support");
}

// Equations (1)/(2): one generating variable per side, both derivatives on
// the same family.  After multiplying by (z - xi) the cell indices start at
// -1.
EquationSides one_family_sides(const FormalSeries& v, bool barred) {
  const int W = v.cutoff();
  const int max_sum = W + 1;

  std::vector<FormalSeries> first;  // d v / d t_a, a = 1..W
  first.reserve(W);
  for (int a = 1; a <= W; ++a)
    first.push_back(diff(v, barred ? Var::tbar(a) : Var::t(a)));

  BivariateSeries x(W);
  for (int a = 1; a <= W; ++a) {
    for (int b = 1; a + b <= max_sum && b <= W; ++b) {
      FormalSeries d = diff(first[a - 1], barred ? Var::tbar(b) : Var::t(b)) *
                       Rational(Integer(1), Integer(a) * Integer(b));
      x.add_cell(a, b, d);
    }
  }
  BivariateSeries e = exp_cells(x, max_sum, max_sum, max_sum);

  BivariateSeries lhs(W);
  for (const auto& [c, s] : e.cells()) {
    lhs.add_cell(c.first - 1, c.second, s);
    lhs.add_cell(c.first, c.second - 1, -s);
  }

  const FormalSeries d0v = diff(v, Var::t0());
  BivariateSeries xz(W), xxi(W);
  for (int k = 1; k <= W; ++k) {
    FormalSeries d = diff(d0v, barred ? Var::tbar(k) : Var::t(k)) *
                     Rational(Integer(-1), Integer(k));
    xz.add_cell(k, 0, d);
    xxi.add_cell(0, k, d);
  }
  BivariateSeries fz = exp_cells(xz, max_sum, 0, max_sum);
  BivariateSeries fxi = exp_cells(xxi, 0, max_sum, max_sum);

  BivariateSeries rhs(W);
  for (const auto& [c, s] : fz.cells()) rhs.add_cell(c.first - 1, 0, s);
  for (const auto& [c, s] : fxi.cells()) rhs.add_cell(0, c.second - 1, -s);
  return {lhs, rhs};
}

// Equation (3): unbarred family against barred family.
EquationSides mixed_family_sides(const FormalSeries& v) {
  const int W = v.cutoff();

  std::vector<FormalSeries> first;
  first.reserve(W);
  for (int a = 1; a <= W; ++a) first.push_back(diff(v, Var::t(a)));

  BivariateSeries y(W);
  for (int a = 1; a <= W; ++a)
    for (int b = 1; b <= W; ++b) {
      FormalSeries d =
          diff(first[a - 1], Var::tbar(b)) * Rational(Integer(1), Integer(a) * Integer(b));
      y.add_cell(a, b, d);
    }

  BivariateSeries lhs(W);
  BivariateSeries em = exp_cells(negate_cells(y), W, W, 2 * W);
  for (const auto& [c, s] : em.cells()) {
    if (c.first == 0 && c.second == 0) continue;  // 1 - exp(-Y): constant cancels
    lhs.add_cell(c.first, c.second, -s);
  }

  const FormalSeries d0v = diff(v, Var::t0());
  const FormalSeries head = exp_series(diff(d0v, Var::t0()));

  BivariateSeries gz_in(W), gxi_in(W);
  for (int k = 1; k <= W; ++k) {
    gz_in.add_cell(k, 0, diff(d0v, Var::t(k)) * Rational(Integer(1), Integer(k)));
    gxi_in.add_cell(0, k, diff(d0v, Var::tbar(k)) * Rational(Integer(1), Integer(k)));
  }
  BivariateSeries gz = exp_cells(gz_in, W, 0, W);
  BivariateSeries gxi = exp_cells(gxi_in, 0, W, W);

  BivariateSeries rhs(W);
  for (const auto& [cz, sz] : gz.cells()) {
    FormalSeries left = head * sz;
    for (const auto& [cx, sx] : gxi.cells()) {
      int a = cz.first + 1, b = cx.second + 1;
      if (a > W || b > W) continue;
      rhs.add_cell(a, b, left * sx);
    }
  }
  return {lhs, rhs};
}

// Truncation-exactness window for one reported monomial of the residual.
// For equations (1)/(2) every stored monomial of a diagonal-support input is
// determined exactly: the untouched side's level bounds every source term's
// level.  For equation (3) each side loses one level per generating order,
// so the cell offsets enter.
bool trusted_monomial(int eq, int W, int a, int b, const TMonomial& m) {
  if (eq == 1 || eq == 2) return true;
  return m.level_u() + a <= W && m.level_b() + b <= W;
}

}  // namespace

EquationSides hirota_sides(const FormalSeries& v, int eq) {
  require_diagonal(v, "hirota_sides");
  switch (eq) {
    case 1:
      return one_family_sides(v, false);
    case 2:
      return one_family_sides(v, true);
    case 3:
      return mixed_family_sides(v);
    default:
      throw std::invalid_argument("hirota_sides: equation must be 1, 2 or 3");
  }
}

ResidualReport hirota_residual(const FormalSeries& v, int eq, int order) {
  const int W = v.cutoff();
  if (order < 1 || order > W)
    throw std::invalid_argument("hirota_residual: order must be in [1, cutoff]");
  EquationSides sides = hirota_sides(v, eq);

  ResidualReport report;
  report.equation = "eq" + std::to_string(eq);
  report.order = order;

  std::map<std::pair<int, int>, FormalSeries> residual;
  auto accumulate = [&](const BivariateSeries& side, bool negate) {
    for (const auto& [c, s] : side.cells()) {
      if (eq == 3) {
        if (c.first > order || c.second > order) continue;
      } else {
        if (c.first + c.second > order) continue;
      }
      auto [it, inserted] = residual.emplace(c, negate ? -s : s);
      if (!inserted) it->second = negate ? it->second - s : it->second + s;
    }
  };
  accumulate(sides.lhs, false);
  accumulate(sides.rhs, true);

  for (const auto& [c, s] : residual) {
    for (const auto& [m, poly] : s.terms()) {
      if (!trusted_monomial(eq, W, c.first, c.second, m)) continue;
      report.entries.push_back({c.first, c.second, m, poly});
    }
  }
  return report;
}

ResidualReport toda_field_residual(const FormalSeries& v) {
  const int W = v.cutoff();
  ResidualReport report;
  report.equation = "toda";
  report.order = W - 1;
  FormalSeries lhs = diff(diff(v, Var::t(1)), Var::tbar(1));
  FormalSeries rhs = exp_series(diff(diff(v, Var::t0()), Var::t0()));
  FormalSeries d = lhs - rhs;
  for (const auto& [m, poly] : d.terms()) {
    if (m.level_u() > W - 1 || m.level_b() > W - 1) continue;
    report.entries.push_back({0, 0, m, poly});
  }
  return report;
}

namespace {

OnePointPoly poly_scale_add(OnePointPoly into, const OnePointPoly& add, const Rational& c) {
  for (const auto& [k, q] : add) {
    auto [it, inserted] = into.emplace(k, q * c);
    if (!inserted) {
      it->second += q * c;
      if (it->second == 0) into.erase(it);
    }
  }
  return into;
}

OnePointPoly poly_mul(const OnePointPoly& x, const OnePointPoly& y) {
  OnePointPoly out;
  for (const auto& [ka, qa] : x)
    for (const auto& [kb, qb] : y) {
      std::vector<int> key;
      key.reserve(ka.size() + kb.size());
      std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(key));
      auto [it, inserted] = out.emplace(std::move(key), qa * qb);
      if (!inserted) {
        it->second += qa * qb;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

// d_1 d_s v as a polynomial in the X_p: alternating sum over compositions of
// s + 1 with weight s / (k_1 .. k_n n!).
const OnePointPoly& level_one_poly(int s) {
  static std::map<int, OnePointPoly> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  OnePointPoly poly;
  for (int n = 1; n <= s + 1; ++n) {
    Rational sign((n % 2 == 0) ? -1 : 1);
    for (auto k : compositions(s + 1, n, 1)) {
      Integer denom = factorial(n);
      for (int x : k) denom *= x;
      std::sort(k.begin(), k.end());
      Rational c = sign * Rational(Integer(s), denom);
      auto [pit, inserted] = poly.emplace(std::move(k), c);
      if (!inserted) {
        pit->second += c;
        if (pit->second == 0) poly.erase(pit);
      }
    }
  }
  return cache.emplace(s, std::move(poly)).first->second;
}

}  // namespace

OnePointPoly didj_via_level_one(int i, int j) {
  OnePointPoly out;
  const int total = i + j;
  for (int m = 1; 2 * m <= total; ++m) {
    Rational sign((m % 2 == 0) ? -1 : 1);
    for (const auto& sigma : compositions(total, m, 2)) {
      std::vector<int> bounds(sigma.size());
      Integer denom = 1;
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        bounds[a] = sigma[a] - 1;
        denom *= sigma[a] - 1;
      }
      std::int64_t count = count_bounded_compositions(i, bounds);
      if (count == 0) continue;
      Rational c0 = sign * Rational(Integer(i) * Integer(j) * count, Integer(m) * denom);
      OnePointPoly product{{{}, Rational(1)}};
      for (int s : sigma) product = poly_mul(product, level_one_poly(s - 1));
      out = poly_scale_add(std::move(out), product, c0);
    }
  }
  return out;
}

OnePointPoly didj_via_axis(int i, int j) {
  OnePointPoly out;
  const int total = i + j;
  for (int m = 1; m <= total; ++m) {
    for (auto p : compositions(total, m, 1)) {
      Rational t = t_pair(i, j, p);
      if (t == 0) continue;
      Integer denom = 1;
      for (int x : p) denom *= x;
      Rational c = t * Rational(Integer(i) * Integer(j), denom);
      std::sort(p.begin(), p.end());
      auto [it, inserted] = out.emplace(std::move(p), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

Rational eval_one_point_poly(const OnePointPoly& poly, const std::vector<Rational>& values) {
  Rational total(0);
  for (const auto& [key, c] : poly) {
    Rational term = c;
    for (int p : key) {
      if (p < 1 || static_cast<std::size_t>(p) > values.size())
        throw std::out_of_range("eval_one_point_poly: missing value");
      term *= values[p - 1];
    }
    total += term;
  }
  return total;
}

ResidualReport dkp_consistency(int i, int j, const FormalSeries& v) {
  if (i < 1 || j < 1) throw std::invalid_argument("dkp_consistency: indices must be >= 1");
  const int W = v.cutoff();
  if (i + j > W) throw std::invalid_argument("dkp_consistency: i + j must be <= the cutoff");
  require_diagonal(v, "dkp_consistency");

  ResidualReport report;
  report.equation = "dkp";
  report.order = i + j;

  OnePointPoly a = didj_via_level_one(i, j);
  OnePointPoly b = didj_via_axis(i, j);
  OnePointPoly d = poly_scale_add(std::move(a), b, Rational(-1));
  for (const auto& [key, c] : d)
    report.entries.push_back({i, j, TMonomial{key, {}}, T0Poly(c)});

  // Evaluate both routes on v and compare with the direct derivative.
  const FormalSeries d0v = diff(v, Var::t0());
  std::vector<FormalSeries> x;
  x.reserve(i + j);
  for (int p = 1; p <= i + j; ++p) x.push_back(diff(d0v, Var::t(p)));
  auto eval_on_series = [&](const OnePointPoly& poly) {
    FormalSeries out(W);
    for (const auto& [key, c] : poly) {
      FormalSeries term = FormalSeries::constant(W, c);
      for (int p : key) term = term * x[p - 1];
      out = out + term;
    }
    return out;
  };
  FormalSeries route_b = eval_on_series(didj_via_axis(i, j));
  FormalSeries direct = diff(diff(v, Var::t(i)), Var::t(j));
  FormalSeries mismatch = route_b - direct;
  for (const auto& [m, poly] : mismatch.terms()) report.entries.push_back({i, j, m, poly});
  return report;
}

ResidualReport homogeneity_check(const FormalSeries& v) {
  ResidualReport report;
  report.equation = "homogeneity";
  report.order = v.cutoff();
  for (const auto& [m, poly] : v.terms()) {
    int weight = 0;
    for (int k : m.unbarred) weight += 2 - k;
    for (int k : m.barred) weight += 2 - k;
    for (const auto& t : poly.terms()) {
      bool ok;
      if (t.log_pow == 1)
        ok = m.empty() && t.t0_exp == 2;
      else
        ok = 2 * t.t0_exp + weight == 4;
      if (!ok) report.entries.push_back({0, 0, m, T0Poly::term(t.coeff, t.t0_exp, t.log_pow)});
    }
  }
  return report;
}

std::pair<FormalSeries, Mutation> mutate_coefficient(const FormalSeries& v, std::uint64_t seed) {
  std::vector<std::pair<TMonomial, T0Term>> slots;
  for (const auto& [m, poly] : v.terms())
    for (const auto& t : poly.terms()) slots.push_back({m, t});
  if (slots.empty()) throw std::invalid_argument("mutate_coefficient: empty series");
  std::mt19937_64 rng(seed);
  const auto& [mon, term] = slots[rng() % slots.size()];
  std::uniform_int_distribution<int> num(1, 9), den(1, 9);
  Rational delta(num(rng) * (rng() % 2 == 0 ? 1 : -1), den(rng));
  FormalSeries out = v;
  out.add_term(mon, T0Poly::term(delta, term.t0_exp, term.log_pow));
  return {out, Mutation{mon, term.t0_exp, term.log_pow, delta}};
}

std::vector<ResidualReport> verify_suite(const FormalSeries& v) {
  const int W = v.cutoff();
  std::vector<ResidualReport> reports;
  auto run = [&](const std::string& name, auto&& fn) {
    try {
      reports.push_back(fn());
    } catch (const std::exception& e) {
      ResidualReport r;
      r.equation = name;
      r.order = W;
      r.error = e.what();
      reports.push_back(std::move(r));
    }
  };
  run("toda", [&] { return toda_field_residual(v); });
  for (int eq = 1; eq <= 3; ++eq)
    run("eq" + std::to_string(eq), [&] { return hirota_residual(v, eq, W); });
  run("homogeneity", [&] { return homogeneity_check(v); });
  for (int i = 1; i <= W; ++i)
    for (int j = i; i + j <= W; ++j)
      run("dkp", [&] { return dkp_consistency(i, j, v); });
  return reports;
}

}  // namespace taumap
