#include "forge/constructions.hpp"

#include <algorithm>
#include <array>

#include "forge/gf.hpp"

namespace forge {

Design build_td(int k, int q) {
  require(k >= 2, Errc::InvalidInput, "need k >= 2");
  const FiniteField gf = FiniteField::build(q);
  require(k <= q + 1, Errc::KTooLarge,
          "TD(" + std::to_string(k) + "," + std::to_string(q) +
              ") needs k <= q+1");

  Design d;
  d.n = k * q;
  for (int g = 0; g < k; ++g) {
    Block group;
    for (int i = 0; i < q; ++i) group.push_back(g * q + i);
    d.groups.push_back(std::move(group));
  }

  // block for (x, y): coordinates x, y, then the squares a*x + y for
  // a = 1..k-2 (nonzero field elements)
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      Block b{x, q + y};
      for (int g = 2; g < k; ++g) {
        const int a = g - 1;
        b.push_back(g * q + gf.add(gf.mul(a, x), y));
      }
      std::sort(b.begin(), b.end());
      d.blocks.push_back(std::move(b));
    }

  d.meta["construction"] = "td";
  d.meta["k"] = k;
  d.meta["q"] = q;
  canonicalize(d);
  return d;
}

Design build_affine_plane(int q) {
  const FiniteField gf = FiniteField::build(q);

  Design d;
  d.n = q * q;  // point (x, y) -> x*q + y
  for (int p = 0; p < d.n; ++p) d.groups.push_back({p});

  std::vector<std::vector<int>> classes;  // pre-canonical block indices
  // slope classes: lines y = a*x + b
  for (int a = 0; a < q; ++a) {
    std::vector<int> cls;
    for (int b = 0; b < q; ++b) {
      Block line;
      for (int x = 0; x < q; ++x)
        line.push_back(x * q + gf.add(gf.mul(a, x), b));
      std::sort(line.begin(), line.end());
      cls.push_back(static_cast<int>(d.blocks.size()));
      d.blocks.push_back(std::move(line));
    }
    classes.push_back(std::move(cls));
  }
  // vertical class: lines x = c
  {
    std::vector<int> cls;
    for (int c = 0; c < q; ++c) {
      Block line;
      for (int y = 0; y < q; ++y) line.push_back(c * q + y);
      cls.push_back(static_cast<int>(d.blocks.size()));
      d.blocks.push_back(std::move(line));
    }
    classes.push_back(std::move(cls));
  }

  d.meta["construction"] = "affine_plane";
  d.meta["q"] = q;
  d.meta["parallel_classes"] = classes;
  canonicalize(d);  // remaps the class indices
  return d;
}

Design build_projective_plane(int q) {
  const FiniteField gf = FiniteField::build(q);

  // normalized homogeneous coordinates: (1,a,b), (0,1,c), (0,0,1)
  const int n = q * q + q + 1;
  auto coords = [&](int id) -> std::array<int, 3> {
    if (id < q * q) return {1, id / q, id % q};
    if (id < q * q + q) return {0, 1, id - q * q};
    return {0, 0, 1};
  };

  Design d;
  d.n = n;
  for (int p = 0; p < n; ++p) d.groups.push_back({p});

  for (int line = 0; line < n; ++line) {
    const auto [u, v, w] = coords(line);
    Block b;
    for (int p = 0; p < n; ++p) {
      const auto [x, y, z] = coords(p);
      const int s = gf.add(gf.add(gf.mul(u, x), gf.mul(v, y)), gf.mul(w, z));
      if (s == 0) b.push_back(p);
    }
    d.blocks.push_back(std::move(b));
  }

  d.meta["construction"] = "projective_plane";
  d.meta["q"] = q;
  canonicalize(d);
  return d;
}

Design delete_point(const Design& pbd, int point) {
  require(point >= 0 && point < pbd.n, Errc::InvalidInput,
          "point out of range");
  require(!pbd.blocks.empty(), Errc::InvalidInput, "design has no blocks");

  const int k = static_cast<int>(pbd.blocks.front().size());
  for (const auto& b : pbd.blocks)
    require(static_cast<int>(b.size()) == k, Errc::InvalidInput,
            "mixed block sizes; need a (v,k,1)-BIBD");
  auto report = verify_pbd(pbd, BlockSizeSet{k});
  require(report.pass, Errc::InvalidInput,
          "input does not verify as a BIBD (" + report.summary() + ")");

  std::vector<int> point_map(pbd.n);
  for (int p = 0; p < pbd.n; ++p) point_map[p] = p < point ? p : p - 1;
  point_map[point] = -1;

  Design d;
  d.n = pbd.n - 1;
  for (const auto& b : pbd.blocks) {
    Block image;
    bool through = false;
    for (int p : b) {
      if (p == point)
        through = true;
      else
        image.push_back(point_map[p]);
    }
    if (through)
      d.groups.push_back(std::move(image));
    else
      d.blocks.push_back(std::move(image));
  }

  d.meta["construction"] = "delete_point";
  d.meta["deleted_point"] = point;
  d.meta["point_map"] = point_map;
  d.meta["block_size"] = k;
  canonicalize(d);
  return d;
}

TruncatedTd truncate_td(const Design& td, int t) {
  auto params = td_parameters(td);
  require(params.has_value(), Errc::InvalidInput,
          "input does not verify as a TD");
  const auto [k, m] = *params;
  require(k >= 3, Errc::InvalidInput,
          "truncating a TD(2,m) would leave blocks of size 1");
  require(t >= 0 && t <= m, Errc::InvalidInput, "need 0 <= t <= m");

  TruncatedTd out;
  out.ell = k - 1;
  out.m = m;
  out.t = t;

  if (t == m) {  // identity: nothing deleted, no induced classes
    out.design = td;
    out.last_group = k - 1;
    return out;
  }

  // deleted points: the m-t highest labels of the last group, listed ascending
  const Block& last = td.groups.back();
  std::vector<int> deleted(last.end() - (m - t), last.end());
  std::vector<char> is_deleted(td.n, 0);
  for (int p : deleted) is_deleted[p] = 1;

  std::vector<int> point_map(td.n, -1);
  int next = 0;
  for (int p = 0; p < td.n; ++p)
    if (!is_deleted[p]) point_map[p] = next++;

  Design d;
  d.n = next;
  for (std::size_t gi = 0; gi + 1 < td.groups.size(); ++gi) {
    Block g;
    for (int p : td.groups[gi]) g.push_back(point_map[p]);
    d.groups.push_back(std::move(g));
  }
  int last_group_pre = -1;
  if (t > 0) {
    Block g;
    for (int p : last)
      if (!is_deleted[p]) g.push_back(point_map[p]);
    last_group_pre = static_cast<int>(d.groups.size());
    d.groups.push_back(std::move(g));
  }

  // classes[i]: pre-canonical indices of the blocks that contained deleted[i]
  std::vector<std::vector<int>> classes(deleted.size());
  for (const auto& b : td.blocks) {
    Block image;
    int deleted_at = -1;
    for (int p : b) {
      if (is_deleted[p]) {
        for (std::size_t i = 0; i < deleted.size(); ++i)
          if (deleted[i] == p) deleted_at = static_cast<int>(i);
      } else {
        image.push_back(point_map[p]);
      }
    }
    const int idx = static_cast<int>(d.blocks.size());
    if (deleted_at >= 0) classes[deleted_at].push_back(idx);
    d.blocks.push_back(std::move(image));
  }

  d.meta["construction"] = "truncate_td";
  d.meta["ell"] = out.ell;
  d.meta["m"] = m;
  d.meta["t"] = t;
  d.meta["deleted_points"] = deleted;
  d.meta["point_map"] = point_map;
  if (t == 0) d.meta["truncated_group_dropped"] = true;
  if (t > 0 && t < m) d.meta["distinguished_group"] = last_group_pre;

  auto maps = canonicalize(d);
  for (auto& cls : classes) {
    for (auto& idx : cls) idx = maps.block_map[idx];
    std::sort(cls.begin(), cls.end());
  }
  out.design = std::move(d);
  out.deleted_point_classes = std::move(classes);
  out.last_group = last_group_pre >= 0 ? maps.group_map[last_group_pre] : -1;
  return out;
}

std::pair<Design, std::vector<int>> td_from_affine_plane(int q) {
  const Design plane = build_affine_plane(q);
  const auto& classes = plane.meta.at("parallel_classes");
  require(classes.is_array() && classes.size() >= 2, Errc::InvalidInput,
          "affine plane lacks parallel classes");

  std::vector<char> is_group_line(plane.blocks.size(), 0);
  for (const auto& idx : classes[0]) is_group_line[idx.get<int>()] = 1;
  std::vector<char> is_disjoint_line(plane.blocks.size(), 0);
  for (const auto& idx : classes[1]) is_disjoint_line[idx.get<int>()] = 1;

  Design d;
  d.n = plane.n;
  std::vector<int> disjoint_pre;
  for (std::size_t bi = 0; bi < plane.blocks.size(); ++bi) {
    if (is_group_line[bi]) {
      d.groups.push_back(plane.blocks[bi]);
    } else {
      if (is_disjoint_line[bi])
        disjoint_pre.push_back(static_cast<int>(d.blocks.size()));
      d.blocks.push_back(plane.blocks[bi]);
    }
  }

  d.meta["construction"] = "td_from_affine_plane";
  d.meta["q"] = q;
  auto maps = canonicalize(d);
  std::vector<int> disjoint;
  for (int idx : disjoint_pre) disjoint.push_back(maps.block_map[idx]);
  std::sort(disjoint.begin(), disjoint.end());
  return {std::move(d), std::move(disjoint)};
}

}  // namespace forge
