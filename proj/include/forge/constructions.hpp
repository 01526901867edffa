#pragma once

#include <utility>
#include <vector>

#include "forge/design.hpp"

namespace forge {

// TD(k, q) for prime-power q and 2 <= k <= q+1, from the MOLS family
// L_a(x, y) = a*x + y over GF(q). Groups are indexed by coordinate; q^2
// blocks, each a transversal. Raises NotPrimePower / KTooLarge.
Design build_td(int k, int q);

// Affine plane of order q as a (q^2, q, 1)-BIBD stored with singleton
// groups. The q+1 parallel classes (slope classes plus verticals) are kept
// in meta "parallel_classes" as lists of block indices.
Design build_affine_plane(int q);

// Projective plane of order q: a (q^2+q+1, q+1, 1)-BIBD.
Design build_projective_plane(int q);

// Deletes a point from a (v, k, 1)-BIBD: the blocks through the point
// (minus the point) become the groups, the blocks avoiding it stay blocks.
// Yields a k-GDD on v-1 points; meta records the point relabeling.
Design delete_point(const Design& pbd, int point);

// A TD(ell+1, m) with the last m-t points of its last group deleted: an
// {ell, ell+1}-GDD of type m^ell t^1. Each deleted point leaves behind its
// induced class of m blocks of size ell, which partitions the first ell
// groups' points.
struct TruncatedTd {
  Design design;
  // Per deleted point (ascending label order), the post-canonical indices of
  // the m blocks it induced.
  std::vector<std::vector<int>> deleted_point_classes;
  int ell = 0, m = 0, t = 0;
  int last_group = -1;  // index into design.groups; -1 once dropped (t = 0)
};

TruncatedTd truncate_td(const Design& td, int t);

// TD(q, q) with q disjoint blocks, from the affine plane of order q: the
// first parallel class becomes the groups, the second supplies the disjoint
// blocks (returned as post-canonical block indices).
std::pair<Design, std::vector<int>> td_from_affine_plane(int q);

}  // namespace forge
