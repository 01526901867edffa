#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "forge/constructions.hpp"
#include "forge/design.hpp"
#include "forge/disjoint.hpp"

namespace forge {

struct Theorem1Params {
  int ell = 0, m = 0, u = 0, v = 0, t = 0;
  BlockSizeSet K;
};

struct Theorem3Params {
  Theorem1Params base;
  int alpha = 1;  // disjoint blocks available in the TD(ell, u)
};

// Resolved ingredient designs for the pipelines. Every design is verified
// against its contract on entry (IngredientInvalid otherwise).
struct Ingredients {
  Design td_master;                 // TD(ell+1, m)
  Design td_small;                  // TD(ell, u)
  std::vector<int> small_disjoint;  // disjoint block indices in td_small
  Design gdd_uv;                    // K-GDD of type u^ell v^1
  Design pbd_fill;                  // (m*u+1, K)-PBD
  Json provenance = Json::array();  // {role, source} entries
};

// Optional replacements for the auto-built ingredients.
struct IngredientSources {
  std::optional<Design> td_master, td_small, gdd_uv, pbd_fill;
  std::vector<int> small_disjoint;
  Json provenance = Json::array();
};

struct PipelineResult {
  // Intermediate PBD on m*u*ell + t*v + 1 points; meta carries the infinity
  // point, the distinguished block B0, and the parallel class.
  Design pbd;
  std::vector<int> parallel_class;  // block indices into pbd.blocks
  // Final K-GDD of type ell^(m*u) (t*v+1)^1, grouped by the parallel class.
  Design gdd;

  VerificationReport pbd_report, class_report, gdd_report;
  bool all_pass() const {
    return pbd_report.pass && class_report.pass && gdd_report.pass;
  }
};

// Theorem 1: truncate a TD(ell+1, m) to type m^ell t^1, weight the first
// ell groups by u and the last by v, fill through WFC with one stipulated
// transversal per block of the u chosen induced classes, adjoin a new point,
// replace each size-m*u group by the fill PBD, and re-group by the resulting
// parallel class. Requires 0 <= t <= m-u.
PipelineResult theorem1(const Theorem1Params& p, const Ingredients& ing);

// Theorem 3: as theorem1 but only ceil(u/alpha) induced classes are used;
// {1..u} is chunked into T_i of size at most alpha and each block of class i
// carries the |T_i| stipulated transversals B'_j, j in T_i. Requires
// 0 <= t <= m - ceil(u/alpha).
PipelineResult theorem3(const Theorem3Params& p, const Ingredients& ing);

// 5-GDD of type 5^(4m) (4t+1)^1 for m = 0,1 mod 5, m > 10, 0 <= t <= m-4.
// Ingredients are auto-built: TD(6,m), TD(5,4) from PG(2,4) minus a point,
// the 5-GDD of type 4^6 from AG(2,5) minus a point, and a (4m+1,5,1)-BIBD
// from the difference-family search.
PipelineResult corollary2(int m, int t, const IngredientSources& sources = {});

// {7,8}-GDD of type 7^(7m) (7t+1)^1 for 0 <= t <= m-1. The (7m+1,7,1)-BIBD
// must be supplied; TD(8,m) is built for prime-power m or imported; the
// 8-GDD of type 7^8 comes from PG(2,7) minus a point and the TD(7,7) with 7
// disjoint blocks from AG(2,7).
PipelineResult corollary5(int m, int t, const std::optional<Design>& bibd,
                          const IngredientSources& sources = {});

// Deletes the last group of a TD(ell+1, u): the u blocks through the lowest
// deleted point become u pairwise-disjoint blocks of the resulting
// TD(ell, u). The returned set is exact (u is the trivial maximum).
std::pair<Design, DisjointBlockSet> parallel_class_from_td(const Design& td);

// Auto-resolution used by the CLI `construct theorem1|theorem3`.
Ingredients resolve_theorem1_ingredients(const Theorem1Params& p,
                                         const IngredientSources& sources);
Ingredients resolve_theorem3_ingredients(const Theorem3Params& p,
                                         const IngredientSources& sources);

}  // namespace forge
