#pragma once

#include <compare>
#include <numeric>
#include <vector>

namespace taumap {

/// Monomial in the variables t_1, t_2, ... and tbar_1, tbar_2, ...: two
/// multisets of positive indices, stored sorted ascending.  The empty
/// monomial is the constant 1.
struct TMonomial {
  std::vector<int> unbarred;
  std::vector<int> barred;

  int level_u() const { return std::accumulate(unbarred.begin(), unbarred.end(), 0); }
  int level_b() const { return std::accumulate(barred.begin(), barred.end(), 0); }
  bool empty() const { return unbarred.empty() && barred.empty(); }

  /// Multiplicity of index k on the given side.
  int count(int k, bool bar) const {
    const auto& v = bar ? barred : unbarred;
    int n = 0;
    for (int x : v) n += (x == k);
    return n;
  }
};

TMonomial canonical_monomial(std::vector<int> unbarred, std::vector<int> barred);
TMonomial monomial_product(const TMonomial& a, const TMonomial& b);
/// Remove one occurrence of index k; the index must be present.
TMonomial remove_index(const TMonomial& m, int k, bool bar);

bool operator==(const TMonomial& a, const TMonomial& b);
/// Canonical order: (unbarred level, barred level, unbarred vector, barred vector).
bool operator<(const TMonomial& a, const TMonomial& b);

}  // namespace taumap
