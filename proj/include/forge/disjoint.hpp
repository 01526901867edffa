#pragma once

#include <vector>

#include "forge/design.hpp"

namespace forge {

struct DisjointBlockSet {
  std::vector<int> blocks;  // pairwise-disjoint block indices, ascending
  bool exact = false;       // true when the size is a proven maximum
};

// Exact maximum set of pairwise disjoint blocks by deterministic
// branch-and-bound (lexicographic branching). Raises SizeLimitExceeded when
// the design has more than `block_limit` blocks.
DisjointBlockSet find_disjoint_blocks_exact(const Design& d,
                                            int block_limit = 250);

// Greedy lexicographic selection; maximal but not necessarily maximum.
DisjointBlockSet find_disjoint_blocks_greedy(const Design& d);

// ceil(u^2 / (ell*(u-1) + 1)): a lower bound on the maximum number of
// disjoint blocks in any TD(ell, u).
int lemma4_bound(int ell, int u);

}  // namespace forge
