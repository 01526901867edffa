#pragma once

#include <vector>

#include "forge/design.hpp"

namespace forge {

// Base blocks over an abelian group whose translates develop into a PBD.
// The group is Z_{f1} x Z_{f2} x ... given by `factors` (invariant factors,
// ascending); an empty factor list means the cyclic group Z_v. Elements are
// encoded 0..v-1 in mixed radix, first factor most significant. A base block
// is full-orbit (orbit length v) or short-orbit: fixed by a subgroup, so its
// orbit length divides v.
struct DifferenceFamily {
  int v = 0;
  std::vector<int> factors;  // empty => {v}
  std::vector<Block> base_blocks;
  std::vector<int> orbit_lengths;  // aligned with base_blocks
};

// Develops every base block by all group translations, one block per
// distinct translate. The result is canonicalized and post-verified; a
// family whose development does not cover every pair exactly once raises
// InvalidFamily.
Design develop_difference_family(const DifferenceFamily& df);

// Deterministic backtracking search for the lexicographically least
// (v, k, 1) difference family over Z_v. Supports one short-orbit shape: the
// subgroup of order k when k | v. Raises Infeasible when the orbit
// accounting rules a family out, NotFound when the search exhausts (which
// is a real outcome: no cyclic (45,5,1) family exists). Intended for
// v up to ~100.
DifferenceFamily search_difference_family(int v, int k);

// The same search over the abelian group with the given invariant factors.
DifferenceFamily search_difference_family_group(std::vector<int> factors,
                                                int k);

// Invariant-factor lists of every abelian group of order n, cyclic first,
// then by increasing factor count.
std::vector<std::vector<int>> abelian_groups_of_order(int n);

}  // namespace forge
