#include "forge/wfc.hpp"

#include <algorithm>
#include <numeric>

#include "forge/constructions.hpp"
#include "forge/disjoint.hpp"

namespace forge {

int IngredientRequest::expanded_size() const {
  return std::accumulate(weights.begin(), weights.end(), 0);
}

int IngredientRequest::local_base(int position) const {
  return std::accumulate(weights.begin(), weights.begin() + position, 0);
}

Block IngredientRequest::required_as_block(int r) const {
  Block b;
  for (std::size_t j = 0; j < master_block.size(); ++j)
    b.push_back(local_base(static_cast<int>(j)) + required[r][j]);
  return b;
}

// ---------------------------------------------------------------------------
// align_ingredient

Design align_ingredient(const Design& ing, const std::vector<int>& disjoint,
                        const std::vector<Block>& targets) {
  if (auto err = structural_error(ing))
    raise(Errc::InvalidInput, "ingredient is malformed: " + *err);
  require(targets.size() <= disjoint.size(), Errc::TooManyTargets,
          std::to_string(targets.size()) + " targets but only " +
              std::to_string(disjoint.size()) + " disjoint blocks");

  const int ngroups = static_cast<int>(ing.groups.size());
  const std::vector<int> gid = point_group_ids(ing);

  // sources[j][g] / wanted[j][g]: the point of the j-th disjoint block /
  // target in group g
  auto split_by_group = [&](const Block& b, Errc err,
                            const char* what) -> std::vector<int> {
    std::vector<int> per_group(ngroups, -1);
    require(static_cast<int>(b.size()) == ngroups, err,
            std::string(what) + " is not a transversal of the groups");
    for (int p : b) {
      require(p >= 0 && p < ing.n, Errc::InvalidInput, "point out of range");
      require(per_group[gid[p]] < 0, err,
              std::string(what) + " meets a group twice");
      per_group[gid[p]] = p;
    }
    return per_group;
  };

  std::vector<std::vector<int>> sources;
  std::vector<char> seen(ing.n, 0);
  for (int idx : disjoint) {
    require(idx >= 0 && idx < static_cast<int>(ing.blocks.size()),
            Errc::InvalidInput, "disjoint block index out of range");
    for (int p : ing.blocks[idx]) {
      require(!seen[p], Errc::NotDisjoint, "the given blocks intersect");
      seen[p] = 1;
    }
    sources.push_back(split_by_group(ing.blocks[idx], Errc::NotTransversal,
                                     "disjoint block"));
  }

  std::vector<std::vector<int>> wanted;
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& tgt : targets) {
    for (int p : tgt) {
      require(p >= 0 && p < ing.n, Errc::InvalidInput,
              "target point out of range");
      require(!seen[p], Errc::NotDisjoint, "the target transversals overlap");
      seen[p] = 1;
    }
    wanted.push_back(split_by_group(tgt, Errc::NotTransversal, "target"));
  }

  // group-wise bijection: pinned pairs first, then unmapped points in
  // ascending order
  std::vector<int> perm(ing.n, -1);
  for (int g = 0; g < ngroups; ++g) {
    std::vector<char> src_used(ing.n, 0), dst_used(ing.n, 0);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      perm[sources[j][g]] = wanted[j][g];
      src_used[sources[j][g]] = 1;
      dst_used[wanted[j][g]] = 1;
    }
    std::vector<int> free_src, free_dst;
    for (int p : ing.groups[g]) {
      if (!src_used[p]) free_src.push_back(p);
      if (!dst_used[p]) free_dst.push_back(p);
    }
    for (std::size_t i = 0; i < free_src.size(); ++i)
      perm[free_src[i]] = free_dst[i];
  }

  Design out;
  out.n = ing.n;
  out.groups = ing.groups;  // perm fixes every group setwise
  out.blocks.reserve(ing.blocks.size());
  for (const auto& b : ing.blocks) {
    Block image;
    for (int p : b) image.push_back(perm[p]);
    std::sort(image.begin(), image.end());
    out.blocks.push_back(std::move(image));
  }
  out.distinguished = ing.distinguished;
  out.meta = ing.meta;
  canonicalize(out);
  return out;
}

Design fit_ingredient_to_request(const Design& ing,
                                 const IngredientRequest& request) {
  require(ing.groups.size() == request.master_block.size(),
          Errc::IngredientInvalid, "ingredient has the wrong group count");
  require(ing.n == request.expanded_size(), Errc::IngredientInvalid,
          "ingredient has the wrong point count");

  // positions claim groups by size, first unused in canonical order
  std::vector<char> used(ing.groups.size(), 0);
  std::vector<int> point_map(ing.n, -1);
  for (std::size_t j = 0; j < request.weights.size(); ++j) {
    int pick = -1;
    for (std::size_t g = 0; g < ing.groups.size() && pick < 0; ++g)
      if (!used[g] &&
          static_cast<int>(ing.groups[g].size()) == request.weights[j])
        pick = static_cast<int>(g);
    require(pick >= 0, Errc::IngredientInvalid,
            "ingredient group sizes do not match the requested type");
    used[pick] = 1;
    const int base = request.local_base(static_cast<int>(j));
    for (std::size_t r = 0; r < ing.groups[pick].size(); ++r)
      point_map[ing.groups[pick][r]] = base + static_cast<int>(r);
  }

  Design out;
  out.n = ing.n;
  for (const auto& g : ing.groups) {
    Block image;
    for (int p : g) image.push_back(point_map[p]);
    std::sort(image.begin(), image.end());
    out.groups.push_back(std::move(image));
  }
  for (const auto& b : ing.blocks) {
    Block image;
    for (int p : b) image.push_back(point_map[p]);
    std::sort(image.begin(), image.end());
    out.blocks.push_back(std::move(image));
  }
  out.distinguished = ing.distinguished;
  canonicalize(out);

  if (request.required.empty()) return out;

  auto found = find_disjoint_blocks_greedy(out);
  if (found.blocks.size() < request.required.size())
    found = find_disjoint_blocks_exact(out);
  require(found.blocks.size() >= request.required.size(),
          Errc::SupplierFailure,
          "ingredient cannot host the required transversals");
  found.blocks.resize(request.required.size());
  std::vector<Block> targets;
  for (std::size_t r = 0; r < request.required.size(); ++r)
    targets.push_back(request.required_as_block(static_cast<int>(r)));
  return align_ingredient(out, found.blocks, targets);
}

// ---------------------------------------------------------------------------
// TdSupplier

Design TdSupplier::resolve(const IngredientRequest& request) const {
  const int b = static_cast<int>(request.master_block.size());
  const int u = request.weights.empty() ? 0 : request.weights.front();
  for (int w : request.weights)
    require(w == u, Errc::SupplierFailure,
            "TD supplier handles uniform weights only");

  Design ing;
  if (u == 1) {
    // TD(b, 1): one block through the b singleton groups
    ing.n = b;
    for (int p = 0; p < b; ++p) ing.groups.push_back({p});
    Block all(b);
    std::iota(all.begin(), all.end(), 0);
    ing.blocks.push_back(std::move(all));
    ing.meta["construction"] = "td";
    canonicalize(ing);
    return ing;  // any required transversal is the block itself
  }

  try {
    ing = build_td(b, u);
  } catch (const Error& e) {
    raise(Errc::SupplierFailure, "no TD(" + std::to_string(b) + "," +
                                     std::to_string(u) + "): " + e.what());
  }

  if (request.required.empty()) return ing;

  auto found = find_disjoint_blocks_greedy(ing);
  if (found.blocks.size() < request.required.size())
    found = find_disjoint_blocks_exact(ing);
  require(found.blocks.size() >= request.required.size(), Errc::SupplierFailure,
          "cannot exhibit " + std::to_string(request.required.size()) +
              " disjoint blocks in TD(" + std::to_string(b) + "," +
              std::to_string(u) + ")");
  found.blocks.resize(request.required.size());

  std::vector<Block> targets;
  for (std::size_t r = 0; r < request.required.size(); ++r)
    targets.push_back(request.required_as_block(static_cast<int>(r)));
  return align_ingredient(ing, found.blocks, targets);
}

// ---------------------------------------------------------------------------
// apply_wfc

WfcResult apply_wfc(const Design& master, const Weighting& w,
                    const IngredientSupplier& supplier,
                    const std::vector<std::vector<std::vector<int>>>&
                        stipulations) {
  // the master must itself be a GDD over its own block sizes
  {
    std::vector<int> sizes;
    for (const auto& b : master.blocks)
      sizes.push_back(static_cast<int>(b.size()));
    auto report = verify_gdd(master, BlockSizeSet(sizes));
    require(report.pass, Errc::InvalidInput,
            "master does not verify as a GDD (" + report.summary() + ")");
  }
  require(static_cast<int>(w.weights.size()) == master.n, Errc::InvalidInput,
          "weighting must cover every master point");
  for (int weight : w.weights)
    require(weight >= 1, Errc::InvalidInput, "weights must be positive");
  require(stipulations.empty() ||
              stipulations.size() == master.blocks.size(),
          Errc::InvalidInput, "stipulations must align with master blocks");

  std::vector<int> offset(master.n + 1, 0);
  for (int p = 0; p < master.n; ++p) offset[p + 1] = offset[p] + w.weights[p];

  Design out;
  out.n = offset[master.n];
  for (const auto& g : master.groups) {
    Block eg;
    for (int x : g)
      for (int i = 0; i < w.weights[x]; ++i) eg.push_back(offset[x] + i);
    std::sort(eg.begin(), eg.end());
    out.groups.push_back(std::move(eg));
  }
  if (master.meta.contains("distinguished_group"))
    out.meta["distinguished_group"] = master.meta["distinguished_group"];

  std::vector<std::vector<int>> stipulated_pre(master.blocks.size());

  for (std::size_t ib = 0; ib < master.blocks.size(); ++ib) {
    const Block& a = master.blocks[ib];
    IngredientRequest req;
    req.master_block = a;
    for (int x : a) req.weights.push_back(w.weights[x]);
    if (!stipulations.empty()) req.required = stipulations[ib];

    for (const auto& r : req.required) {
      require(r.size() == a.size(), Errc::InvalidInput,
              "required transversal must pick one copy per master point");
      for (std::size_t j = 0; j < r.size(); ++j)
        require(r[j] >= 0 && r[j] < req.weights[j], Errc::InvalidInput,
                "required copy index out of range");
    }

    Design ing = supplier.resolve(req);

    // contract: group j of the ingredient is the local range of position j
    const int expanded = req.expanded_size();
    std::string where = "ingredient for master block " + std::to_string(ib);
    require(ing.n == expanded, Errc::IngredientInvalid,
            where + " has wrong point count");
    require(ing.groups.size() == a.size(), Errc::IngredientInvalid,
            where + " has wrong group count");
    for (std::size_t j = 0; j < a.size(); ++j) {
      const int base = req.local_base(static_cast<int>(j));
      const Block& g = ing.groups[j];
      bool contiguous = static_cast<int>(g.size()) == req.weights[j];
      for (std::size_t i = 0; contiguous && i < g.size(); ++i)
        contiguous = g[i] == base + static_cast<int>(i);
      require(contiguous, Errc::IngredientInvalid,
              where + ": group " + std::to_string(j) +
                  " does not match the expanded range");
    }
    require(verify_gdd(ing, supplier.block_sizes()).pass,
            Errc::IngredientInvalid, where + " fails verification");

    // local point -> global point
    std::vector<int> to_global(expanded);
    for (std::size_t j = 0; j < a.size(); ++j) {
      const int base = req.local_base(static_cast<int>(j));
      for (int i = 0; i < req.weights[j]; ++i)
        to_global[base + i] = offset[a[j]] + i;
    }

    const int block_base = static_cast<int>(out.blocks.size());
    for (const auto& blk : ing.blocks) {
      Block image;
      for (int p : blk) image.push_back(to_global[p]);
      std::sort(image.begin(), image.end());
      out.blocks.push_back(std::move(image));
    }

    for (std::size_t r = 0; r < req.required.size(); ++r) {
      const Block target = req.required_as_block(static_cast<int>(r));
      auto it = std::find(ing.blocks.begin(), ing.blocks.end(), target);
      require(it != ing.blocks.end(), Errc::IngredientInvalid,
              where + " lacks a required block");
      stipulated_pre[ib].push_back(
          block_base + static_cast<int>(it - ing.blocks.begin()));
    }
  }

  out.meta["construction"] = "wfc";
  auto maps = canonicalize(out);

  WfcResult result;
  result.stipulated.resize(stipulated_pre.size());
  for (std::size_t ib = 0; ib < stipulated_pre.size(); ++ib)
    for (int idx : stipulated_pre[ib])
      result.stipulated[ib].push_back(maps.block_map[idx]);

  require(verify_gdd(out, supplier.block_sizes()).pass, Errc::IngredientInvalid,
          "assembled design fails verification");
  result.design = std::move(out);
  return result;
}

}  // namespace forge
