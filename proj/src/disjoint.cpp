#include "forge/disjoint.hpp"

#include <algorithm>
#include <cstdint>

namespace forge {

namespace {

class PointMask {
 public:
  explicit PointMask(int n) : words_((n + 63) / 64, 0) {}

  void set(int p) { words_[p >> 6] |= uint64_t{1} << (p & 63); }
  void clear(int p) { words_[p >> 6] &= ~(uint64_t{1} << (p & 63)); }

  bool intersects(const Block& b) const {
    for (int p : b)
      if (words_[p >> 6] & (uint64_t{1} << (p & 63))) return true;
    return false;
  }

 private:
  std::vector<uint64_t> words_;
};

}  // namespace

DisjointBlockSet find_disjoint_blocks_exact(const Design& d, int block_limit) {
  const int nblocks = static_cast<int>(d.blocks.size());
  require(nblocks <= block_limit, Errc::SizeLimitExceeded,
          std::to_string(nblocks) + " blocks exceeds the exact-search cap of " +
              std::to_string(block_limit));

  int min_size = d.n + 1;
  for (const auto& b : d.blocks)
    min_size = std::min(min_size, static_cast<int>(b.size()));

  std::vector<int> best, chosen;
  PointMask covered(d.n);
  int covered_points = 0;

  // lexicographic branch and bound; prune when even packing every remaining
  // point into minimum-size blocks cannot beat the incumbent
  auto dfs = [&](auto&& self, int next) -> void {
    if (chosen.size() > best.size()) best = chosen;
    for (int i = next; i < nblocks; ++i) {
      const int optimistic = static_cast<int>(chosen.size()) +
                             std::min(nblocks - i,
                                      (d.n - covered_points) / min_size);
      if (optimistic <= static_cast<int>(best.size())) return;
      const Block& b = d.blocks[i];
      if (covered.intersects(b)) continue;
      for (int p : b) covered.set(p);
      covered_points += static_cast<int>(b.size());
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
      covered_points -= static_cast<int>(b.size());
      for (int p : b) covered.clear(p);
    }
  };
  if (nblocks > 0 && min_size >= 1) dfs(dfs, 0);

  return {std::move(best), true};
}

DisjointBlockSet find_disjoint_blocks_greedy(const Design& d) {
  DisjointBlockSet out;
  PointMask covered(d.n);
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    if (covered.intersects(d.blocks[i])) continue;
    for (int p : d.blocks[i]) covered.set(p);
    out.blocks.push_back(static_cast<int>(i));
  }
  out.exact = false;
  return out;
}

int lemma4_bound(int ell, int u) {
  require(ell >= 2 && u >= 2, Errc::InvalidInput, "need ell >= 2 and u >= 2");
  const int denom = ell * (u - 1) + 1;
  return (u * u + denom - 1) / denom;
}

}  // namespace forge
