#pragma once

#include "taumap/rational.hpp"

#include <cstdint>
#include <vector>

namespace taumap {

/// Number of ordered tuples (x_1..x_m), 1 <= x_j <= bounds[j], summing to
/// total.  Exact, memoized; symmetric in the bounds.  A bound <= 0 forces 0.
std::int64_t count_bounded_compositions(int total, const std::vector<int>& bounds);

/// All ordered tuples of `parts` integers >= min_part summing to total.
std::vector<std::vector<int>> compositions(int total, int parts, int min_part = 1);

/// All multisets of positive integers summing to n, sorted ascending within
/// each partition; cached.
const std::vector<std::vector<int>>& partitions_of(int n);

/// One way of distributing a labeled multiset into ordered nonempty blocks
/// with prescribed sums: the block contents (as sorted multisets) plus the
/// number of labeled assignments realizing them.
struct BlockPartition {
  std::vector<std::vector<int>> blocks;
  std::int64_t multiplicity = 0;
};

/// All partitions of the labeled multiset `items` into ordered nonempty
/// blocks with block p summing to block_sums[p].  Empty result when
/// impossible.
std::vector<BlockPartition> ordered_block_partitions(const std::vector<int>& items,
                                                     const std::vector<int>& block_sums);

/// Sum over ordered block partitions of prod_p (s_p-1)!/(s_p-n_p+1-ell_p)!
/// where n_p is the size of block p; a negative factorial argument kills the
/// partition's contribution.
Rational s_weight(const std::vector<int>& barred, const std::vector<int>& parts,
                  const std::vector<int>& ells);

/// Pairwise coefficient T_ij(p_1..p_m): sum over consecutive groupings of the
/// parts into q runs, sign (-1)^(m+1)/q, weight 1/(n_1!..n_q!), times the
/// bounded-composition count of i against (group sums - 1).  Requires
/// sum(parts) == i + j.
Rational t_pair(int i, int j, const std::vector<int>& parts);

/// Multi-index coefficient tower T_{i_1..i_k}(parts; ells), k >= 2.
/// Base case k = 2: t_pair when every ell is 1, else 0.  For k >= 3 the
/// window recursion applies; windows are restricted to merged part s > 0 and
/// merged ell > 0, so an all-ones ell window never contributes (its merged
/// tower entry would fall outside the ell >= 1 key space).  Memoized.
Rational t_multi(const std::vector<int>& indices, const std::vector<int>& parts,
                 const std::vector<int>& ells);

/// Drop all memo tables (test isolation / memory control).
void clear_combinatorics_tables();

}  // namespace taumap
