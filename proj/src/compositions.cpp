#include "taumap/compositions.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace taumap {

namespace {

struct VecKey {
  std::vector<int> v;
  bool operator==(const VecKey& o) const { return v == o.v; }
};

struct VecKeyHash {
  std::size_t operator()(const VecKey& k) const { return hash_int_vector(k.v); }
};

// Memo tables; each behaves as one logical map under concurrent access.
std::mutex g_p_mutex;
std::unordered_map<VecKey, std::int64_t, VecKeyHash> g_p_table;

std::mutex g_tpair_mutex;
std::unordered_map<VecKey, Rational, VecKeyHash> g_tpair_table;

std::mutex g_tmulti_mutex;
std::unordered_map<VecKey, Rational, VecKeyHash> g_tmulti_table;

std::vector<int> concat_key(std::initializer_list<const std::vector<int>*> vs,
                            std::initializer_list<int> scalars) {
  std::vector<int> key;
  for (int s : scalars) key.push_back(s);
  for (const auto* v : vs) {
    key.push_back(-1);  // separator; payload entries are >= 0
    key.insert(key.end(), v->begin(), v->end());
  }
  return key;
}

Integer multinomial(int n, const std::vector<int>& parts) {
  Integer r = factorial(n);
  for (int p : parts) r /= factorial(p);
  return r;
}

}  // namespace

std::int64_t count_bounded_compositions(int total, const std::vector<int>& bounds) {
  if (total < static_cast<int>(bounds.size())) return 0;
  for (int b : bounds)
    if (b <= 0) return 0;
  std::vector<int> sorted = bounds;
  std::sort(sorted.begin(), sorted.end());
  VecKey key{concat_key({&sorted}, {total})};
  {
    std::lock_guard lock(g_p_mutex);
    auto it = g_p_table.find(key);
    if (it != g_p_table.end()) return it->second;
  }
  std::vector<std::int64_t> ways(static_cast<std::size_t>(total) + 1, 0);
  ways[0] = 1;
  for (int b : sorted) {
    std::vector<std::int64_t> next(ways.size(), 0);
    for (int s = 0; s <= total; ++s) {
      if (ways[s] == 0) continue;
      for (int x = 1; x <= b && s + x <= total; ++x) next[s + x] += ways[s];
    }
    ways = std::move(next);
  }
  std::int64_t count = ways[total];
  std::lock_guard lock(g_p_mutex);
  g_p_table.emplace(std::move(key), count);
  return count;
}

std::vector<std::vector<int>> compositions(int total, int parts, int min_part) {
  std::vector<std::vector<int>> out;
  if (parts <= 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(parts);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == parts - 1) {
      if (remaining >= min_part) {
        cur[pos] = remaining;
        out.push_back(cur);
      }
      return;
    }
    int tail_min = min_part * (parts - pos - 1);
    for (int x = min_part; remaining - x >= tail_min; ++x) {
      cur[pos] = x;
      self(self, pos + 1, remaining - x);
    }
  };
  rec(rec, 0, total);
  return out;
}

const std::vector<std::vector<int>>& partitions_of(int n) {
  static std::mutex mutex;
  static std::unordered_map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int min_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = min_part; x <= remaining; ++x) {
      cur.push_back(x);
      self(self, remaining - x, x);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(rec, n, 1);
  return cache.emplace(n, std::move(out)).first->second;
}

std::vector<BlockPartition> ordered_block_partitions(const std::vector<int>& items,
                                                     const std::vector<int>& block_sums) {
  const int m = static_cast<int>(block_sums.size());
  std::vector<BlockPartition> out;
  if (m == 0) {
    if (items.empty()) out.push_back({{}, 1});
    return out;
  }
  // Value classes of the multiset, ascending.
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<int, int>> classes;  // (value, multiplicity)
  for (int x : sorted) {
    if (!classes.empty() && classes.back().first == x)
      ++classes.back().second;
    else
      classes.emplace_back(x, 1);
  }

  std::vector<int> remaining = block_sums;
  std::vector<std::vector<int>> blocks(m);
  Integer mult = 1;

  auto emit = [&] {
    for (int p = 0; p < m; ++p)
      if (remaining[p] != 0 || blocks[p].empty()) return;
    out.push_back({blocks, mult.convert_to<std::int64_t>()});
  };

  auto rec = [&](auto&& self, std::size_t ci) -> void {
    if (ci == classes.size()) {
      emit();
      return;
    }
    auto [value, q] = classes[ci];
    std::vector<int> dist(m, 0);
    auto apply_and_descend = [&] {
      Integer ways = multinomial(q, dist);
      for (int b = 0; b < m; ++b) {
        remaining[b] -= dist[b] * value;
        for (int r = 0; r < dist[b]; ++r) blocks[b].push_back(value);
      }
      mult *= ways;
      self(self, ci + 1);
      mult /= ways;
      for (int b = 0; b < m; ++b) {
        remaining[b] += dist[b] * value;
        for (int r = 0; r < dist[b]; ++r) blocks[b].pop_back();
      }
    };
    auto place = [&](auto&& inner, int p, int left) -> void {
      if (p == m - 1) {
        if (left * value > remaining[p]) return;
        dist[p] = left;
        apply_and_descend();
        return;
      }
      for (int x = 0; x <= left && x * value <= remaining[p]; ++x) {
        dist[p] = x;
        inner(inner, p + 1, left - x);
      }
    };
    place(place, 0, q);
  };
  rec(rec, 0);
  return out;
}

Rational s_weight(const std::vector<int>& barred, const std::vector<int>& parts,
                  const std::vector<int>& ells) {
  if (parts.size() != ells.size())
    throw std::invalid_argument("s_weight: parts and ells must have equal length");
  Rational total(0);
  for (const auto& part : ordered_block_partitions(barred, parts)) {
    Rational w(part.multiplicity);
    bool dead = false;
    for (std::size_t p = 0; p < parts.size() && !dead; ++p) {
      int np = static_cast<int>(part.blocks[p].size());
      int den = parts[p] - np + 1 - ells[p];
      if (den < 0) {
        dead = true;
        break;
      }
      w *= factorial_ratio(parts[p] - 1, den);
    }
    if (!dead) total += w;
  }
  return total;
}

Rational t_pair(int i, int j, const std::vector<int>& parts) {
  int sum = 0;
  for (int p : parts) {
    if (p < 1) throw std::invalid_argument("t_pair: parts must be >= 1");
    sum += p;
  }
  if (sum != i + j) throw std::invalid_argument("t_pair: parts must sum to i + j");
  const int m = static_cast<int>(parts.size());
  VecKey key{concat_key({&parts}, {i})};
  {
    std::lock_guard lock(g_tpair_mutex);
    auto it = g_tpair_table.find(key);
    if (it != g_tpair_table.end()) return it->second;
  }
  const int sign = (m % 2 == 0) ? -1 : 1;
  Rational total(0);
  for (int q = 1; q <= m; ++q) {
    for (const auto& n : compositions(m, q, 1)) {
      // Consecutive grouping via prefix sums of n.
      std::vector<int> bounds(q);
      int pos = 0;
      bool possible = true;
      Integer weight = 1;
      for (int r = 0; r < q; ++r) {
        int g = 0;
        for (int a = 0; a < n[r]; ++a) g += parts[pos++];
        bounds[r] = g - 1;
        if (bounds[r] < 1) possible = false;
        weight *= factorial(n[r]);
      }
      if (!possible) continue;
      std::int64_t count = count_bounded_compositions(i, bounds);
      if (count == 0) continue;
      total += Rational(Integer(sign) * count, Integer(q) * weight);
    }
  }
  std::lock_guard lock(g_tpair_mutex);
  g_tpair_table.emplace(std::move(key), total);
  return total;
}

Rational t_multi(const std::vector<int>& indices, const std::vector<int>& parts,
                 const std::vector<int>& ells) {
  const int k = static_cast<int>(indices.size());
  const int m = static_cast<int>(parts.size());
  if (k < 2) throw std::invalid_argument("t_multi: needs at least two indices");
  if (m == 0 || parts.size() != ells.size())
    throw std::invalid_argument("t_multi: parts and ells must be nonempty and equal length");
  int isum = 0, psum = 0, lsum = 0;
  for (int x : indices) {
    if (x < 1) throw std::invalid_argument("t_multi: indices must be >= 1");
    isum += x;
  }
  for (int p : parts) {
    if (p < 1) throw std::invalid_argument("t_multi: parts must be >= 1");
    psum += p;
  }
  for (int l : ells) {
    if (l < 1) throw std::invalid_argument("t_multi: ells must be >= 1");
    lsum += l;
  }
  if (psum != isum) throw std::invalid_argument("t_multi: parts must sum to sum of indices");

  if (k == 2) {
    for (int l : ells)
      if (l != 1) return Rational(0);
    return t_pair(indices[0], indices[1], parts);
  }
  if (lsum != m + k - 2)
    throw std::invalid_argument("t_multi: ells must sum to m + k - 2");

  VecKey key{concat_key({&indices, &parts, &ells}, {})};
  {
    std::lock_guard lock(g_tmulti_mutex);
    auto it = g_tmulti_table.find(key);
    if (it != g_tmulti_table.end()) return it->second;
  }

  const int last = indices.back();
  const std::vector<int> head(indices.begin(), indices.end() - 1);
  Rational total(0);
  for (int wi = 0; wi < m; ++wi) {
    int s_window = 0;
    for (int wj = wi; wj < m; ++wj) {
      s_window += parts[wj];
      const int s = s_window - last;
      if (s < 1) continue;
      int ell = 0;
      Integer denom = 1;
      for (int a = wi; a <= wj; ++a) {
        ell += ells[a] - 1;
        denom *= factorial(ells[a] - 1);
      }
      if (ell < 1) continue;

      std::vector<int> new_parts(parts.begin(), parts.begin() + wi);
      new_parts.push_back(s);
      new_parts.insert(new_parts.end(), parts.begin() + wj + 1, parts.end());
      std::vector<int> new_ells(ells.begin(), ells.begin() + wi);
      new_ells.push_back(ell);
      new_ells.insert(new_ells.end(), ells.begin() + wj + 1, ells.end());

      Rational sub = t_multi(head, new_parts, new_ells);
      if (sub == 0) continue;
      std::vector<int> window(parts.begin() + wi, parts.begin() + wj + 1);
      Rational tp = t_pair(s, last, window);
      if (tp == 0) continue;
      total += sub * tp * Rational(factorial(ell), denom);
    }
  }
  std::lock_guard lock(g_tmulti_mutex);
  g_tmulti_table.emplace(std::move(key), total);
  return total;
}

void clear_combinatorics_tables() {
  {
    std::lock_guard lock(g_p_mutex);
    g_p_table.clear();
  }
  {
    std::lock_guard lock(g_tpair_mutex);
    g_tpair_table.clear();
  }
  {
    std::lock_guard lock(g_tmulti_mutex);
    g_tmulti_table.clear();
  }
}

}  // namespace taumap
