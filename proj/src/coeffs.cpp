#include "taumap/coeffs.hpp"

#include "taumap/compositions.hpp"
#include "taumap/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace taumap {

int CoeffKey::level_u() const { return std::accumulate(unbarred.begin(), unbarred.end(), 0); }
int CoeffKey::level_b() const { return std::accumulate(barred.begin(), barred.end(), 0); }

CoeffKey canonical_key(std::vector<int> unbarred, std::vector<int> barred) {
  for (int x : unbarred)
    if (x < 1) throw std::invalid_argument("CoeffKey: indices must be >= 1");
  for (int x : barred)
    if (x < 1) throw std::invalid_argument("CoeffKey: indices must be >= 1");
  std::sort(unbarred.begin(), unbarred.end());
  std::sort(barred.begin(), barred.end());
  return {std::move(unbarred), std::move(barred)};
}

void CauchyData::set_one_point(int s, int ell, T0Poly value) {
  if (s < 1 || ell < 0) throw std::invalid_argument("CauchyData: need s >= 1, ell >= 0");
  one_point_[{s, ell}] = std::move(value);
}

const T0Poly& CauchyData::one_point(int s, int ell) const {
  auto it = one_point_.find({s, ell});
  if (it == one_point_.end()) {
    std::ostringstream os;
    os << "CauchyData: missing one-point function (s=" << s << ", ell=" << ell << ")";
    throw std::out_of_range(os.str());
  }
  return it->second;
}

CauchyData riemann_cauchy_data(int W) {
  if (W < 1) throw std::invalid_argument("riemann_cauchy_data: W must be >= 1");
  CauchyData data;
  data.set_d0(T0Poly::term(Rational(-1), 1) + T0Poly::term(Rational(1), 1, 1));
  data.set_d0_squared(T0Poly::term(Rational(1), 0, 1));
  for (int s = 1; s <= W; ++s)
    for (int ell = 0; ell <= W; ++ell) data.set_one_point(s, ell, T0Poly());
  return data;
}

namespace {

struct KeyHash {
  std::size_t operator()(const CoeffKey& k) const {
    return hash_combine(hash_int_vector(k.unbarred), hash_int_vector(k.barred));
  }
};

std::mutex g_ncoeff_mutex;
std::unordered_map<CoeffKey, Rational, KeyHash> g_ncoeff_table;

Rational n_value(const CoeffKey& key) {
  const int i = key.level_u();
  if (i != key.level_b() || i == 0) return Rational(0);
  const int k = static_cast<int>(key.unbarred.size());
  const int kb = static_cast<int>(key.barred.size());

  // Either side a single index: the product of the other side's indices
  // times a falling factorial of the level.
  if (k == 1) return product_of(key.barred) * factorial_ratio(i, i - kb + 1);
  if (kb == 1) return product_of(key.unbarred) * factorial_ratio(i, i - k + 1);

  {
    std::lock_guard lock(g_ncoeff_mutex);
    auto it = g_ncoeff_table.find(key);
    if (it != g_ncoeff_table.end()) return it->second;
  }
  const Rational prefactor = product_of(key.unbarred) * product_of(key.barred);
  Rational total(0);
  // m factors can absorb at most kb nonempty barred blocks and at most i
  // unit parts.
  const int m_max = std::min(i, kb);
  for (int m = 1; m <= m_max; ++m) {
    for (const auto& parts : compositions(i, m, 1)) {
      for (const auto& ells : compositions(m + k - 2, m, 1)) {
        Rational sw = s_weight(key.barred, parts, ells);
        if (sw == 0) continue;
        Rational tower = t_multi(key.unbarred, parts, ells);
        if (tower == 0) continue;
        total += tower * sw;
      }
    }
  }
  total *= prefactor;
  std::lock_guard lock(g_ncoeff_mutex);
  g_ncoeff_table.emplace(key, total);
  return total;
}

}  // namespace

T0Term n_coeff(const CoeffKey& key) {
  const int i = key.level_u();
  Rational value = n_value(key);
  if (value == 0) return {Rational(0), 0, 0};
  int exp = i - static_cast<int>(key.unbarred.size() + key.barred.size()) + 2;
  return {std::move(value), exp, 0};
}

T0Term axis_mixed_derivative(const std::vector<int>& unbarred, const std::vector<int>& barred) {
  return n_coeff(canonical_key(unbarred, barred));
}

T0Poly reconstruct_pure_derivative(const std::vector<int>& indices, const CauchyData& data) {
  const int k = static_cast<int>(indices.size());
  if (k == 0) throw std::invalid_argument("reconstruct_pure_derivative: empty index set");
  if (k == 1) return data.one_point(indices[0], 0);
  const int total_level = std::accumulate(indices.begin(), indices.end(), 0);
  const Rational num = product_of(indices);
  T0Poly result;
  for (int m = 1; m <= total_level; ++m) {
    for (const auto& parts : compositions(total_level, m, 1)) {
      for (const auto& ells : compositions(m + k - 2, m, 1)) {
        // Product of the supplied one-point functions; skip dead products
        // before touching the tower.
        T0Poly product(Rational(1));
        bool dead = false;
        for (int a = 0; a < m; ++a) {
          const T0Poly& f = data.one_point(parts[a], ells[a]);
          if (f.is_zero()) {
            dead = true;
            break;
          }
          product = product * f;
        }
        if (dead) continue;
        Rational tower = t_multi(indices, parts, ells);
        if (tower == 0) continue;
        Rational denom(1);
        for (int p : parts) denom *= p;
        result = result + product * (num * tower / denom);
      }
    }
  }
  return result;
}

namespace {

Integer multiplicity_factor(const std::vector<int>& sorted) {
  Integer f = 1;
  int run = 1;
  for (std::size_t a = 1; a <= sorted.size(); ++a) {
    if (a < sorted.size() && sorted[a] == sorted[a - 1]) {
      ++run;
    } else {
      f *= factorial(run);
      run = 1;
    }
  }
  return f;
}

}  // namespace

FormalSeries tau_series(int W) {
  if (W < 1) throw std::invalid_argument("tau_series: W must be >= 1");
  FormalSeries v(W);
  v.add_term(TMonomial{}, T0Poly::term(Rational(1, 2), 2, 1) + T0Poly::term(Rational(-3, 4), 2));

  std::vector<CoeffKey> keys;
  for (int level = 1; level <= W; ++level) {
    const auto& parts = partitions_of(level);
    for (const auto& u : parts)
      for (const auto& b : parts) keys.push_back({u, b});
  }
  std::vector<T0Term> values(keys.size());
  parallel_for(keys.size(), [&](std::size_t idx) { values[idx] = n_coeff(keys[idx]); });
  for (std::size_t idx = 0; idx < keys.size(); ++idx) {
    if (values[idx].is_zero()) continue;
    const auto& key = keys[idx];
    Rational coeff = values[idx].coeff /
                     Rational(multiplicity_factor(key.unbarred) * multiplicity_factor(key.barred));
    v.add_term(TMonomial{key.unbarred, key.barred},
               T0Poly::term(std::move(coeff), values[idx].t0_exp));
  }
  return v;
}

std::vector<CoeffRow> coefficient_table(int W) {
  if (W < 1) throw std::invalid_argument("coefficient_table: W must be >= 1");
  std::vector<CoeffKey> keys;
  for (int level = 1; level <= W; ++level) {
    const auto& parts = partitions_of(level);
    for (const auto& u : parts)
      for (const auto& b : parts) keys.push_back({u, b});
  }
  std::vector<CoeffRow> rows(keys.size());
  parallel_for(keys.size(), [&](std::size_t idx) {
    T0Term t = n_coeff(keys[idx]);
    int i = keys[idx].level_u();
    int exp = i - static_cast<int>(keys[idx].unbarred.size() + keys[idx].barred.size()) + 2;
    rows[idx] = {keys[idx].unbarred, keys[idx].barred, t.coeff, t.is_zero() ? exp : t.t0_exp};
  });
  return rows;
}

nlohmann::json coefficient_table_to_json(const std::vector<CoeffRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"unbarred", r.unbarred},
                   {"barred", r.barred},
                   {"num", to_decimal_string(numerator_of(r.value))},
                   {"den", to_decimal_string(denominator_of(r.value))},
                   {"t0_exp", r.t0_exp}});
  }
  return out;
}

void clear_coefficient_tables() {
  std::lock_guard lock(g_ncoeff_mutex);
  g_ncoeff_table.clear();
}

}  // namespace taumap
