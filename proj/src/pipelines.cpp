#include "forge/pipelines.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "forge/difference_family.hpp"
#include "forge/gf.hpp"
#include "forge/wfc.hpp"

namespace forge {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Relabels d so that the group assigned to position j occupies the
// contiguous local range of that position. Returns the relabeled design and
// the block index map (original index -> new index).
std::pair<Design, std::vector<int>> arrange_groups(
    const Design& d, const std::vector<int>& group_for_position) {
  std::vector<int> point_map(d.n, -1);
  int base = 0;
  for (int g : group_for_position) {
    const Block& grp = d.groups[g];
    for (std::size_t r = 0; r < grp.size(); ++r)
      point_map[grp[r]] = base + static_cast<int>(r);
    base += static_cast<int>(grp.size());
  }

  Design out;
  out.n = d.n;
  for (int g : group_for_position) {
    Block image;
    for (int p : d.groups[g]) image.push_back(point_map[p]);
    std::sort(image.begin(), image.end());
    out.groups.push_back(std::move(image));
  }
  for (const auto& b : d.blocks) {
    Block image;
    for (int p : b) image.push_back(point_map[p]);
    std::sort(image.begin(), image.end());
    out.blocks.push_back(std::move(image));
  }
  out.distinguished = d.distinguished;
  auto maps = canonicalize(out);
  return {std::move(out), std::move(maps.block_map)};
}

std::vector<int> identity_order(std::size_t count) {
  std::vector<int> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<int>(i);
  return order;
}

// Supplier for the theorem pipelines: size-ell blocks are filled with the
// TD(ell, u) ingredient (aligned onto any stipulated transversals), size
// ell+1 blocks with the u^ell v^1 ingredient.
class PipelineSupplier : public IngredientSupplier {
 public:
  PipelineSupplier(const Design& td_small, std::vector<int> small_disjoint,
                   const Design& gdd_uv, BlockSizeSet K, int ell, int u, int v)
      : gdd_uv_(gdd_uv), K_(std::move(K)), ell_(ell), u_(u), v_(v) {
    auto [local, block_map] =
        arrange_groups(td_small, identity_order(td_small.groups.size()));
    td_small_local_ = std::move(local);
    for (int idx : small_disjoint)
      small_disjoint_local_.push_back(block_map[idx]);
  }

  Design resolve(const IngredientRequest& request) const override {
    const int size = static_cast<int>(request.master_block.size());
    if (size == ell_ &&
        std::all_of(request.weights.begin(), request.weights.end(),
                    [&](int w) { return w == u_; })) {
      if (request.required.empty()) return td_small_local_;
      require(request.required.size() <= small_disjoint_local_.size(),
              Errc::AlphaUnavailable,
              "block needs " + std::to_string(request.required.size()) +
                  " aligned transversals but only " +
                  std::to_string(small_disjoint_local_.size()) +
                  " disjoint blocks are available");
      std::vector<int> use(small_disjoint_local_.begin(),
                           small_disjoint_local_.begin() +
                               static_cast<int>(request.required.size()));
      std::vector<Block> targets;
      for (std::size_t r = 0; r < request.required.size(); ++r)
        targets.push_back(request.required_as_block(static_cast<int>(r)));
      return align_ingredient(td_small_local_, use, targets);
    }

    if (size == ell_ + 1) {
      require(request.required.empty(), Errc::SupplierFailure,
              "stipulations on size ell+1 blocks are not supported");
      // match the u^ell v^1 groups onto positions by weight; when u == v the
      // groups are interchangeable and the last one plays the v role
      std::vector<int> u_groups, v_groups;
      for (std::size_t g = 0; g < gdd_uv_.groups.size(); ++g) {
        const int s = static_cast<int>(gdd_uv_.groups[g].size());
        if (u_ == v_ ? g + 1 < gdd_uv_.groups.size() : s == u_)
          u_groups.push_back(static_cast<int>(g));
        else if (s == v_)
          v_groups.push_back(static_cast<int>(g));
        else
          raise(Errc::SupplierFailure, "unexpected group size in gdd_uv");
      }
      std::vector<int> order;
      std::size_t next_u = 0, next_v = 0;
      for (int w : request.weights) {
        if (w == u_ && next_u < u_groups.size())
          order.push_back(u_groups[next_u++]);
        else if (w == v_ && next_v < v_groups.size())
          order.push_back(v_groups[next_v++]);
        else
          raise(Errc::SupplierFailure,
                "block weights do not match type u^ell v^1");
      }
      return arrange_groups(gdd_uv_, order).first;
    }

    raise(Errc::SupplierFailure,
          "no ingredient for a block of size " + std::to_string(size));
  }

  const BlockSizeSet& block_sizes() const override { return K_; }

 private:
  Design td_small_local_;
  std::vector<int> small_disjoint_local_;
  const Design& gdd_uv_;
  BlockSizeSet K_;
  int ell_, u_, v_;
};

void check_ingredient(bool ok, const std::string& role,
                      const std::string& what) {
  require(ok, Errc::IngredientInvalid, role + ": " + what);
}

void verify_ingredients(const Theorem1Params& p, const Ingredients& ing) {
  auto master = td_parameters(ing.td_master);
  check_ingredient(master && master->first == p.ell + 1 &&
                       master->second == p.m,
                   "td_master",
                   "must verify as a TD(" + std::to_string(p.ell + 1) + "," +
                       std::to_string(p.m) + ")");
  auto small = td_parameters(ing.td_small);
  check_ingredient(small && small->first == p.ell && small->second == p.u,
                   "td_small",
                   "must verify as a TD(" + std::to_string(p.ell) + "," +
                       std::to_string(p.u) + ")");

  GddType expected_uv = GddType::from_sizes([&] {
    std::vector<int> sizes(p.ell, p.u);
    sizes.push_back(p.v);
    return sizes;
  }());
  check_ingredient(compute_type(ing.gdd_uv) == expected_uv, "gdd_uv",
                   "must have type " + std::to_string(p.u) + "^" +
                       std::to_string(p.ell) + " " + std::to_string(p.v) +
                       "^1");
  check_ingredient(verify_gdd(ing.gdd_uv, p.K).pass, "gdd_uv",
                   "fails GDD verification against K = " + p.K.to_string());

  check_ingredient(ing.pbd_fill.n == p.m * p.u + 1, "pbd_fill",
                   "must have " + std::to_string(p.m * p.u + 1) + " points");
  check_ingredient(ing.pbd_fill.distinguished.empty(), "pbd_fill",
                   "must not carry distinguished blocks");
  check_ingredient(verify_pbd(ing.pbd_fill, p.K).pass, "pbd_fill",
                   "fails PBD verification against K = " + p.K.to_string());
}

// Disjoint blocks actually needed: the largest chunk T_i has size
// min(alpha, u).
std::vector<int> settle_disjoint(const Theorem1Params& p, int alpha,
                                 const Ingredients& ing) {
  const int needed = std::min(alpha, p.u);
  std::vector<int> disjoint = ing.small_disjoint;

  std::vector<char> seen(ing.td_small.n, 0);
  for (int idx : disjoint) {
    check_ingredient(idx >= 0 &&
                         idx < static_cast<int>(ing.td_small.blocks.size()),
                     "td_small", "disjoint block index out of range");
    for (int pt : ing.td_small.blocks[idx]) {
      check_ingredient(!seen[pt], "td_small",
                       "declared disjoint blocks intersect");
      seen[pt] = 1;
    }
  }

  if (static_cast<int>(disjoint.size()) < needed) {
    auto found = find_disjoint_blocks_exact(ing.td_small);
    if (static_cast<int>(found.blocks.size()) >= needed)
      disjoint = std::move(found.blocks);
  }
  require(static_cast<int>(disjoint.size()) >= needed, Errc::AlphaUnavailable,
          std::to_string(needed) +
              " pairwise disjoint blocks cannot be exhibited in td_small");
  return disjoint;
}

PipelineResult run_pipeline(const Theorem1Params& p, int alpha,
                            const Ingredients& ing, const char* op_name,
                            int t_max) {
  require(p.ell >= 2 && p.m >= 1 && p.u >= 1 && p.v >= 1,
          Errc::PreconditionViolated, "parameters must be positive");
  require(p.K.contains(p.ell), Errc::PreconditionViolated,
          "ell must belong to K");
  require(p.u <= p.m, Errc::PreconditionViolated, "need u <= m");
  require(alpha >= 1, Errc::PreconditionViolated, "need alpha >= 1");
  require(p.t >= 0 && p.t <= t_max, Errc::PreconditionViolated,
          "need 0 <= t <= " + std::to_string(t_max) + ", got t = " +
              std::to_string(p.t));

  verify_ingredients(p, ing);
  const std::vector<int> disjoint = settle_disjoint(p, alpha, ing);

  // 1. truncate the master TD to type m^ell t^1
  TruncatedTd trunc = truncate_td(ing.td_master, p.t);
  const int classes_used = ceil_div(p.u, alpha);

  // 2. stipulation plan: chunk the u copies into T_i, one chunk per chosen
  //    deleted point, constant-copy transversal B'_j for each block of the
  //    induced class
  std::vector<std::vector<std::vector<int>>> stipulations(
      trunc.design.blocks.size());
  for (int i = 0; i < classes_used; ++i) {
    const int copy_lo = i * alpha;
    const int copy_hi = std::min((i + 1) * alpha, p.u);
    for (int block_idx : trunc.deleted_point_classes[i]) {
      const auto size = trunc.design.blocks[block_idx].size();
      for (int j = copy_lo; j < copy_hi; ++j)
        stipulations[block_idx].emplace_back(size, j);
    }
  }

  // 3. weight u on the surviving full groups, v on the truncated group
  Weighting weighting;
  weighting.weights.assign(trunc.design.n, p.u);
  if (trunc.last_group >= 0)
    for (int pt : trunc.design.groups[trunc.last_group])
      weighting.weights[pt] = p.v;

  PipelineSupplier supplier(ing.td_small, disjoint, ing.gdd_uv, p.K, p.ell,
                            p.u, p.v);
  WfcResult wfc = apply_wfc(trunc.design, weighting, supplier, stipulations);

  const int mu = p.m * p.u;
  int wfc_distinguished = -1;
  if (wfc.design.meta.contains("distinguished_group"))
    wfc_distinguished = wfc.design.meta["distinguished_group"].get<int>();

  // 4. adjoin the new point, fill every size-mu group with the PBD, keep the
  //    truncated group as the single block B0
  const int infinity = wfc.design.n;
  Design pbd;
  pbd.n = wfc.design.n + 1;
  for (int pt = 0; pt < pbd.n; ++pt) pbd.groups.push_back({pt});
  pbd.blocks = wfc.design.blocks;

  for (std::size_t g = 0; g < wfc.design.groups.size(); ++g) {
    if (static_cast<int>(g) == wfc_distinguished) continue;
    const Block& group = wfc.design.groups[g];
    check_ingredient(static_cast<int>(group.size()) == mu, "pbd_fill",
                     "group size does not match m*u");
    for (const auto& fb : ing.pbd_fill.blocks) {
      Block image;
      for (int pt : fb)
        image.push_back(pt == mu ? infinity : group[pt]);
      std::sort(image.begin(), image.end());
      pbd.blocks.push_back(std::move(image));
    }
  }

  Block b0{infinity};
  if (wfc_distinguished >= 0) {
    const Block& last = wfc.design.groups[wfc_distinguished];
    b0.insert(b0.end(), last.begin(), last.end());
    std::sort(b0.begin(), b0.end());
  }
  const int b0_pre = static_cast<int>(pbd.blocks.size());
  pbd.blocks.push_back(std::move(b0));
  pbd.distinguished = {b0_pre};

  std::vector<int> class_pre;
  for (const auto& indices : wfc.stipulated)
    class_pre.insert(class_pre.end(), indices.begin(), indices.end());
  class_pre.push_back(b0_pre);

  pbd.meta["construction"] = op_name;
  pbd.meta["infinity"] = infinity;
  pbd.meta["b0_block"] = b0_pre;
  pbd.meta["parallel_class"] = class_pre;

  auto pbd_maps = canonicalize(pbd);

  PipelineResult result;
  for (int idx : class_pre)
    result.parallel_class.push_back(pbd_maps.block_map[idx]);
  std::sort(result.parallel_class.begin(), result.parallel_class.end());
  const int b0_idx = pbd_maps.block_map[b0_pre];

  result.pbd_report = verify_pbd(pbd, p.K);
  result.class_report = verify_parallel_class(pbd, result.parallel_class);

  // 5. the parallel class becomes the groups of the final GDD
  Design gdd;
  gdd.n = pbd.n;
  std::vector<char> in_class(pbd.blocks.size(), 0);
  for (int idx : result.parallel_class) in_class[idx] = 1;
  int b0_group_pre = -1;
  for (int idx : result.parallel_class) {
    if (idx == b0_idx) b0_group_pre = static_cast<int>(gdd.groups.size());
    gdd.groups.push_back(pbd.blocks[idx]);
  }
  for (std::size_t bi = 0; bi < pbd.blocks.size(); ++bi)
    if (!in_class[bi]) gdd.blocks.push_back(pbd.blocks[bi]);

  gdd.meta["construction"] = op_name;
  gdd.meta["params"] = Json{{"ell", p.ell}, {"m", p.m},     {"u", p.u},
                            {"v", p.v},     {"t", p.t},     {"alpha", alpha},
                            {"K", p.K.to_string()}};
  if (!ing.provenance.empty()) gdd.meta["ingredients"] = ing.provenance;
  gdd.meta["distinguished_group"] = b0_group_pre;
  canonicalize(gdd);
  result.gdd_report = verify_gdd(gdd, p.K);

  result.pbd = std::move(pbd);
  result.gdd = std::move(gdd);
  return result;
}

// Builtin (points, K)-PBDs: planes first, then difference families over the
// abelian groups of the right order, cyclic first (no cyclic (45,5,1)
// exists, so the Z3 x Z15 family carries the corollary2 ingredient). Cached:
// the pipelines re-request the same fills.
Design builtin_pbd_fill(int points, const BlockSizeSet& K) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::string>, Design> cache;
  const std::pair<int, std::string> key{points, K.to_string()};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  std::optional<Design> found;
  for (int q = 2; !found && q * q <= points; ++q)
    if (q * q == points && K.contains(q) && is_prime_power(q))
      found = build_affine_plane(q);
  for (int q = 2; !found && q * q + q + 1 <= points; ++q)
    if (q * q + q + 1 == points && K.contains(q + 1) && is_prime_power(q))
      found = build_projective_plane(q);
  if (!found) {
    for (int k : K.sizes()) {
      for (const auto& factors : abelian_groups_of_order(points)) {
        try {
          found = develop_difference_family(
              search_difference_family_group(factors, k));
          break;
        } catch (const Error&) {
          // try the next group / block size
        }
      }
      if (found) break;
    }
  }
  if (!found)
    raise(Errc::IngredientMissing,
          "no builtin (" + std::to_string(points) + "," + K.to_string() +
              ")-PBD; supply one as a file");

  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(*found)).first->second;
}

void note(Json& provenance, const std::string& role,
          const std::string& source) {
  provenance.push_back(Json{{"role", role}, {"source", source}});
}

}  // namespace

PipelineResult theorem1(const Theorem1Params& p, const Ingredients& ing) {
  return run_pipeline(p, 1, ing, "theorem1", p.m - p.u);
}

PipelineResult theorem3(const Theorem3Params& p, const Ingredients& ing) {
  require(p.alpha >= 1, Errc::PreconditionViolated, "need alpha >= 1");
  const int t_max = p.base.m - ceil_div(p.base.u, p.alpha);
  return run_pipeline(p.base, p.alpha, ing, "theorem3", t_max);
}

std::pair<Design, DisjointBlockSet> parallel_class_from_td(const Design& td) {
  auto params = td_parameters(td);
  require(params.has_value(), Errc::InvalidInput,
          "input does not verify as a TD");
  const auto [k, u] = *params;
  require(k >= 3, Errc::InvalidInput,
          "deleting a group of a TD(2,u) leaves blocks of size 1");

  const Block& last = td.groups.back();
  const int fixed_point = last.front();  // lowest deleted label
  std::vector<char> is_deleted(td.n, 0);
  for (int pt : last) is_deleted[pt] = 1;

  std::vector<int> point_map(td.n, -1);
  int next = 0;
  for (int pt = 0; pt < td.n; ++pt)
    if (!is_deleted[pt]) point_map[pt] = next++;

  Design d;
  d.n = next;
  for (std::size_t g = 0; g + 1 < td.groups.size(); ++g) {
    Block image;
    for (int pt : td.groups[g]) image.push_back(point_map[pt]);
    d.groups.push_back(std::move(image));
  }
  std::vector<int> disjoint_pre;
  for (const auto& b : td.blocks) {
    Block image;
    bool through_fixed = false;
    for (int pt : b) {
      if (pt == fixed_point) through_fixed = true;
      if (!is_deleted[pt]) image.push_back(point_map[pt]);
    }
    if (through_fixed)
      disjoint_pre.push_back(static_cast<int>(d.blocks.size()));
    d.blocks.push_back(std::move(image));
  }

  d.meta["construction"] = "parallel_class_from_td";
  d.meta["point_map"] = point_map;
  auto maps = canonicalize(d);

  DisjointBlockSet set;
  for (int idx : disjoint_pre) set.blocks.push_back(maps.block_map[idx]);
  std::sort(set.blocks.begin(), set.blocks.end());
  set.exact = true;  // u disjoint blocks meet the trivial upper bound
  return {std::move(d), std::move(set)};
}

Ingredients resolve_theorem1_ingredients(const Theorem1Params& p,
                                         const IngredientSources& sources) {
  Theorem3Params p3;
  p3.base = p;
  p3.alpha = 1;
  return resolve_theorem3_ingredients(p3, sources);
}

Ingredients resolve_theorem3_ingredients(const Theorem3Params& p3,
                                         const IngredientSources& sources) {
  const Theorem1Params& p = p3.base;
  Ingredients ing;
  ing.provenance = sources.provenance;

  if (sources.td_master) {
    ing.td_master = *sources.td_master;
  } else {
    try {
      ing.td_master = build_td(p.ell + 1, p.m);
    } catch (const Error& e) {
      raise(Errc::IngredientMissing,
            std::string("td_master: no builtin TD(") +
                std::to_string(p.ell + 1) + "," + std::to_string(p.m) +
                ") (" + e.what() + "); supply one as a file");
    }
    note(ing.provenance, "td_master", "builtin:td");
  }

  if (sources.td_small) {
    ing.td_small = *sources.td_small;
    ing.small_disjoint = sources.small_disjoint;
  } else {
    const int needed = std::min(p3.alpha, p.u);
    try {
      if (needed > 1 && p.ell <= p.u) {
        // Take the TD(ell, u) with u disjoint blocks that a truncated
        // TD(ell+1, u) provides.
        auto [td, set] = parallel_class_from_td(build_td(p.ell + 1, p.u));
        ing.td_small = std::move(td);
        ing.small_disjoint = std::move(set.blocks);
        note(ing.provenance, "td_small", "builtin:parallel_class_from_td");
      } else {
        ing.td_small = build_td(p.ell, p.u);
        ing.small_disjoint = {0};
        note(ing.provenance, "td_small", "builtin:td");
      }
    } catch (const Error& e) {
      raise(Errc::IngredientMissing,
            std::string("td_small: no builtin TD(") + std::to_string(p.ell) +
                "," + std::to_string(p.u) + ") (" + e.what() +
                "); supply one as a file");
    }
  }

  if (sources.gdd_uv) {
    ing.gdd_uv = *sources.gdd_uv;
  } else if (p.u == p.v && p.u == p.ell - 1 && is_prime_power(p.ell)) {
    Design plane = build_affine_plane(p.ell);
    ing.gdd_uv = delete_point(plane, plane.n - 1);
    note(ing.provenance, "gdd_uv", "builtin:affine_plane_minus_point");
  } else if (p.u == p.v && p.K.contains(p.ell + 1) && p.ell <= p.u &&
             is_prime_power(p.u)) {
    ing.gdd_uv = build_td(p.ell + 1, p.u);
    note(ing.provenance, "gdd_uv", "builtin:td");
  } else {
    raise(Errc::IngredientMissing,
          "gdd_uv: no builtin K-GDD of type " + std::to_string(p.u) + "^" +
              std::to_string(p.ell) + " " + std::to_string(p.v) +
              "^1; supply one as a file");
  }

  if (sources.pbd_fill) {
    ing.pbd_fill = *sources.pbd_fill;
  } else {
    ing.pbd_fill = builtin_pbd_fill(p.m * p.u + 1, p.K);
    note(ing.provenance, "pbd_fill", "builtin:pbd");
  }
  return ing;
}

PipelineResult corollary2(int m, int t, const IngredientSources& sources) {
  require(m > 10, Errc::PreconditionViolated, "corollary2 needs m > 10");
  require(m % 5 == 0 || m % 5 == 1, Errc::PreconditionViolated,
          "corollary2 needs m = 0 or 1 mod 5");
  require(t >= 0 && t <= m - 4, Errc::PreconditionViolated,
          "corollary2 needs 0 <= t <= m-4");

  Theorem1Params p{5, m, 4, 4, t, BlockSizeSet{5}};

  Ingredients ing;
  ing.provenance = sources.provenance;
  if (sources.td_master) {
    ing.td_master = *sources.td_master;
  } else {
    require(is_prime_power(m), Errc::IngredientMissing,
            "td_master: TD(6," + std::to_string(m) +
                ") is not builtin for non-prime-power m; supply a file");
    ing.td_master = build_td(6, m);
    note(ing.provenance, "td_master", "builtin:td");
  }

  Design pg4 = build_projective_plane(4);
  ing.td_small = delete_point(pg4, pg4.n - 1);
  ing.small_disjoint = {0};
  note(ing.provenance, "td_small", "builtin:projective_plane_minus_point");

  Design ag5 = build_affine_plane(5);
  ing.gdd_uv = delete_point(ag5, ag5.n - 1);
  note(ing.provenance, "gdd_uv", "builtin:affine_plane_minus_point");

  if (sources.pbd_fill) {
    ing.pbd_fill = *sources.pbd_fill;
  } else {
    try {
      ing.pbd_fill = builtin_pbd_fill(4 * m + 1, p.K);
    } catch (const Error& e) {
      raise(Errc::IngredientMissing,
            std::string("pbd_fill: no (") + std::to_string(4 * m + 1) +
                ",5,1)-BIBD available (" + e.what() + "); supply a file");
    }
    note(ing.provenance, "pbd_fill", "builtin:pbd");
  }

  return theorem1(p, ing);
}

PipelineResult corollary5(int m, int t, const std::optional<Design>& bibd,
                          const IngredientSources& sources) {
  require(m >= 1, Errc::PreconditionViolated, "corollary5 needs m >= 1");
  require(t >= 0 && t <= m - 1, Errc::PreconditionViolated,
          "corollary5 needs 0 <= t <= m-1");

  Theorem3Params p3{{7, m, 7, 7, t, BlockSizeSet{7, 8}}, 7};

  Ingredients ing;
  ing.provenance = sources.provenance;
  if (!bibd && !sources.pbd_fill)
    raise(Errc::IngredientMissing,
          "pbd_fill: a (7m+1,7,1)-BIBD must be supplied");
  ing.pbd_fill = bibd ? *bibd : *sources.pbd_fill;

  if (sources.td_master) {
    ing.td_master = *sources.td_master;
  } else {
    require(is_prime_power(m) && m >= 7, Errc::IngredientMissing,
            "td_master: TD(8," + std::to_string(m) +
                ") is not builtin; supply a file");
    ing.td_master = build_td(8, m);
    note(ing.provenance, "td_master", "builtin:td");
  }

  auto [td77, disjoint] = td_from_affine_plane(7);
  ing.td_small = std::move(td77);
  ing.small_disjoint = std::move(disjoint);
  note(ing.provenance, "td_small", "builtin:td_from_affine_plane");

  Design pg7 = build_projective_plane(7);
  ing.gdd_uv = delete_point(pg7, pg7.n - 1);
  note(ing.provenance, "gdd_uv", "builtin:projective_plane_minus_point");

  return theorem3(p3, ing);
}

}  // namespace forge
