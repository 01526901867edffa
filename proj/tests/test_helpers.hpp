#pragma once

// Test-only oracles and fixture helpers. The naive checks here are written
// independently of the library verifier (plain scans over std::set contents,
// no shared counting code) so they can vouch for it.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "forge/design.hpp"

namespace forge::testing {

// Number of blocks containing both a and b, by linear scan.
inline int blocks_covering(const Design& d, int a, int b) {
  int count = 0;
  for (const auto& blk : d.blocks) {
    bool has_a = std::find(blk.begin(), blk.end(), a) != blk.end();
    bool has_b = std::find(blk.begin(), blk.end(), b) != blk.end();
    if (has_a && has_b) ++count;
  }
  return count;
}

// Independent GDD check. Returns an empty string when d satisfies the GDD
// axioms for block sizes K, otherwise a description of the first failure.
inline std::string naive_gdd_failure(const Design& d,
                                     const std::vector<int>& K) {
  std::vector<std::set<int>> group_sets;
  for (const auto& g : d.groups) group_sets.emplace_back(g.begin(), g.end());

  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const auto& blk = d.blocks[bi];
    if (!d.is_distinguished(static_cast<int>(bi)) &&
        std::find(K.begin(), K.end(), static_cast<int>(blk.size())) == K.end())
      return "block " + std::to_string(bi) + " has a bad size";
    for (const auto& gs : group_sets) {
      int meet = 0;
      for (int p : blk) meet += gs.count(p);
      if (meet > 1) return "block " + std::to_string(bi) + " meets a group twice";
    }
  }

  auto group_of = [&](int p) {
    for (std::size_t gi = 0; gi < group_sets.size(); ++gi)
      if (group_sets[gi].count(p)) return static_cast<int>(gi);
    return -1;
  };
  for (int a = 0; a < d.n; ++a)
    for (int b = a + 1; b < d.n; ++b) {
      const int expected = group_of(a) != group_of(b) ? 1 : 0;
      if (blocks_covering(d, a, b) != expected)
        return "pair (" + std::to_string(a) + "," + std::to_string(b) +
               ") covered " + std::to_string(blocks_covering(d, a, b)) +
               " times, expected " + std::to_string(expected);
    }
  return "";
}

// A PBD fixture from raw blocks: singleton groups, canonicalized.
inline Design make_pbd(int n, std::vector<Block> blocks) {
  Design d;
  d.n = n;
  for (int p = 0; p < n; ++p) d.groups.push_back({p});
  d.blocks = std::move(blocks);
  canonicalize(d);
  return d;
}

inline Design remove_block(Design d, std::size_t index) {
  d.blocks.erase(d.blocks.begin() + index);
  d.distinguished.clear();
  canonicalize(d);
  return d;
}

inline Design duplicate_block(Design d, std::size_t index) {
  d.blocks.push_back(d.blocks[index]);
  canonicalize(d);
  return d;
}

// Exchanges the group membership of two points from different groups,
// leaving the blocks untouched.
inline Design swap_across_groups(Design d, int a, int b) {
  for (auto& g : d.groups)
    for (auto& p : g) {
      if (p == a)
        p = b;
      else if (p == b)
        p = a;
    }
  canonicalize(d);
  return d;
}

// Checks that a failed report's first witness names a real violation,
// judged by the naive oracle.
inline bool witness_is_real(const Design& d, const BlockSizeSet& K,
                            const VerificationReport& report) {
  if (report.pass || report.violations.empty()) return false;
  const Violation& v = report.first();
  const std::vector<int> gid = point_group_ids(d);
  if (v.axiom == "pair-uncovered" && v.pair)
    return gid[v.pair->first] != gid[v.pair->second] &&
           blocks_covering(d, v.pair->first, v.pair->second) == 0;
  if (v.axiom == "pair-covered-multiply" && v.pair)
    return blocks_covering(d, v.pair->first, v.pair->second) > 1;
  if (v.axiom == "group-block-meet" && v.pair && v.block)
    return gid[v.pair->first] == gid[v.pair->second] &&
           blocks_covering(d, v.pair->first, v.pair->second) >= 1;
  if (v.axiom == "block-size" && v.block)
    return !K.contains(
        static_cast<int>(d.blocks[*v.block].size()));
  return false;
}

}  // namespace forge::testing
