#include "forge/design.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace forge {

namespace {

// Triangular index for a pair a < b over n points.
inline std::size_t pair_index(int n, int a, int b) {
  return static_cast<std::size_t>(a) * (2 * n - a - 1) / 2 + (b - a - 1);
}

std::vector<int> sorted_permutation(const std::vector<Block>& items) {
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return items[a] < items[b]; });
  return order;
}

void remap_index_list(Json& list, const std::vector<int>& map) {
  if (!list.is_array()) return;
  std::vector<int> out;
  out.reserve(list.size());
  for (const auto& v : list) {
    if (!v.is_number_integer()) return;
    int idx = v.get<int>();
    if (idx < 0 || idx >= static_cast<int>(map.size())) return;
    out.push_back(map[idx]);
  }
  std::sort(out.begin(), out.end());
  list = out;
}

}  // namespace

bool Design::is_distinguished(int block_index) const {
  return std::binary_search(distinguished.begin(), distinguished.end(),
                            block_index);
}

CanonicalMaps canonicalize(Design& d) {
  for (auto& g : d.groups) std::sort(g.begin(), g.end());
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());

  const std::vector<int> group_order = sorted_permutation(d.groups);
  const std::vector<int> block_order = sorted_permutation(d.blocks);

  CanonicalMaps maps;
  maps.group_map.assign(d.groups.size(), 0);
  maps.block_map.assign(d.blocks.size(), 0);
  for (std::size_t pos = 0; pos < group_order.size(); ++pos)
    maps.group_map[group_order[pos]] = static_cast<int>(pos);
  for (std::size_t pos = 0; pos < block_order.size(); ++pos)
    maps.block_map[block_order[pos]] = static_cast<int>(pos);

  std::vector<Block> new_groups(d.groups.size());
  for (std::size_t pos = 0; pos < group_order.size(); ++pos)
    new_groups[pos] = std::move(d.groups[group_order[pos]]);
  d.groups = std::move(new_groups);

  std::vector<Block> new_blocks(d.blocks.size());
  for (std::size_t pos = 0; pos < block_order.size(); ++pos)
    new_blocks[pos] = std::move(d.blocks[block_order[pos]]);
  d.blocks = std::move(new_blocks);

  for (auto& idx : d.distinguished)
    if (idx >= 0 && idx < static_cast<int>(maps.block_map.size()))
      idx = maps.block_map[idx];
  std::sort(d.distinguished.begin(), d.distinguished.end());

  if (d.meta.contains("distinguished_group") &&
      d.meta["distinguished_group"].is_number_integer()) {
    int g = d.meta["distinguished_group"].get<int>();
    if (g >= 0 && g < static_cast<int>(maps.group_map.size()))
      d.meta["distinguished_group"] = maps.group_map[g];
  }
  if (d.meta.contains("b0_block") && d.meta["b0_block"].is_number_integer()) {
    int b = d.meta["b0_block"].get<int>();
    if (b >= 0 && b < static_cast<int>(maps.block_map.size()))
      d.meta["b0_block"] = maps.block_map[b];
  }
  if (d.meta.contains("parallel_class"))
    remap_index_list(d.meta["parallel_class"], maps.block_map);
  if (d.meta.contains("parallel_classes") &&
      d.meta["parallel_classes"].is_array())
    for (auto& cls : d.meta["parallel_classes"])
      remap_index_list(cls, maps.block_map);

  return maps;
}

std::optional<std::string> structural_error(const Design& d) {
  if (d.n < 0) return "n is negative";

  std::vector<int> seen(d.n, 0);
  for (std::size_t gi = 0; gi < d.groups.size(); ++gi) {
    const auto& g = d.groups[gi];
    if (g.empty()) return "groups[" + std::to_string(gi) + "] is empty";
    for (std::size_t j = 0; j < g.size(); ++j) {
      int p = g[j];
      if (p < 0 || p >= d.n)
        return "groups[" + std::to_string(gi) + "]: point " +
               std::to_string(p) + " out of range";
      if (j > 0 && g[j - 1] >= p)
        return "groups[" + std::to_string(gi) + "] not strictly ascending";
      if (seen[p]++)
        return "groups: point " + std::to_string(p) +
               " appears in more than one group";
    }
  }
  for (int p = 0; p < d.n; ++p)
    if (!seen[p]) return "groups: point " + std::to_string(p) + " uncovered";

  for (int idx : d.distinguished)
    if (idx < 0 || idx >= static_cast<int>(d.blocks.size()))
      return "distinguished: block index " + std::to_string(idx) +
             " out of range";

  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const auto& b = d.blocks[bi];
    if (b.empty()) return "blocks[" + std::to_string(bi) + "] is empty";
    if (b.size() < 2 && !d.is_distinguished(static_cast<int>(bi)))
      return "blocks[" + std::to_string(bi) +
             "] has size < 2 and is not distinguished";
    for (std::size_t j = 0; j < b.size(); ++j) {
      int p = b[j];
      if (p < 0 || p >= d.n)
        return "blocks[" + std::to_string(bi) + "]: point " +
               std::to_string(p) + " out of range";
      if (j > 0 && b[j - 1] >= p)
        return "blocks[" + std::to_string(bi) +
               "] not strictly ascending (repeated point?)";
    }
  }
  return std::nullopt;
}

std::vector<int> point_group_ids(const Design& d) {
  std::vector<int> gid(d.n, -1);
  for (std::size_t gi = 0; gi < d.groups.size(); ++gi)
    for (int p : d.groups[gi]) gid[p] = static_cast<int>(gi);
  return gid;
}

// ---------------------------------------------------------------------------
// GddType

GddType GddType::from_sizes(std::vector<int> sizes,
                            std::optional<int> distinguished_size) {
  GddType t;
  for (int s : sizes) t.multiset_[s]++;

  if (distinguished_size) {
    auto it = std::find(sizes.begin(), sizes.end(), *distinguished_size);
    if (it != sizes.end()) sizes.erase(it);
  }
  std::map<int, int, std::greater<>> collapsed;
  for (int s : sizes) collapsed[s]++;
  for (auto [size, mult] : collapsed) t.terms_.emplace_back(size, mult);
  if (distinguished_size) t.terms_.emplace_back(*distinguished_size, 1);
  return t;
}

GddType GddType::parse(const std::string& text) {
  GddType t;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    int size = 0, exp = 1;
    auto caret = token.find('^');
    try {
      if (caret == std::string::npos) {
        size = std::stoi(token);
      } else {
        size = std::stoi(token.substr(0, caret));
        exp = std::stoi(token.substr(caret + 1));
      }
    } catch (const std::exception&) {
      raise(Errc::ParseError, "bad type term '" + token + "'");
    }
    if (size <= 0 || exp < 0)
      raise(Errc::ParseError, "bad type term '" + token + "'");
    if (exp == 0) continue;
    t.terms_.emplace_back(size, exp);
    t.multiset_[size] += exp;
  }
  return t;
}

std::string GddType::to_string() const {
  std::string out;
  for (const auto& [size, exp] : terms_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(size) + "^" + std::to_string(exp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// BlockSizeSet

BlockSizeSet::BlockSizeSet(std::initializer_list<int> sizes)
    : BlockSizeSet(std::vector<int>(sizes)) {}

BlockSizeSet::BlockSizeSet(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  std::sort(sizes_.begin(), sizes_.end());
  sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  for (int k : sizes_)
    require(k >= 2, Errc::InvalidInput,
            "block size " + std::to_string(k) + " < 2 not allowed in K");
}

bool BlockSizeSet::contains(int k) const {
  return std::binary_search(sizes_.begin(), sizes_.end(), k);
}

std::string BlockSizeSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes_[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Verification

std::string VerificationReport::summary() const {
  if (pass) return "pass";
  std::string out = "fail: " + first().axiom;
  if (first().pair)
    out += " pair (" + std::to_string(first().pair->first) + "," +
           std::to_string(first().pair->second) + ")";
  if (first().block) out += " block " + std::to_string(*first().block);
  if (!first().detail.empty()) out += " [" + first().detail + "]";
  return out;
}

namespace {

struct Reporter {
  VerificationReport report;

  void add(Violation v) {
    report.pass = false;
    if (static_cast<int>(report.violations.size()) < kMaxViolations)
      report.violations.push_back(std::move(v));
  }
};

// Shared pair-counting engine. In PBD mode the groups are singletons so
// every pair is a cross-group pair and the same rules apply.
VerificationReport verify_pairwise(const Design& d, const BlockSizeSet& K) {
  Reporter r;

  if (auto err = structural_error(d)) {
    r.add({"structure", std::nullopt, std::nullopt, *err});
    return r.report;
  }

  const std::vector<int> gid = point_group_ids(d);
  std::vector<uint8_t> count;
  count.assign(static_cast<std::size_t>(d.n) * (d.n - 1) / 2, 0);

  for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
    const Block& b = d.blocks[bi];
    if (!d.is_distinguished(static_cast<int>(bi)) &&
        !K.contains(static_cast<int>(b.size())))
      r.add({"block-size", std::nullopt, static_cast<int>(bi),
             "size " + std::to_string(b.size()) + " not in " + K.to_string()});

    bool meets_group_twice = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (gid[b[i]] == gid[b[j]] && !meets_group_twice) {
          meets_group_twice = true;
          r.add({"group-block-meet", std::make_pair(b[i], b[j]),
                 static_cast<int>(bi),
                 "block meets group " + std::to_string(gid[b[i]]) + " twice"});
        }
        auto& c = count[pair_index(d.n, b[i], b[j])];
        if (c < 255) ++c;
      }
  }

  for (int a = 0; a < d.n; ++a)
    for (int b = a + 1; b < d.n; ++b) {
      if (gid[a] == gid[b]) continue;  // within-group pairs handled above
      uint8_t c = count[pair_index(d.n, a, b)];
      if (c == 0)
        r.add({"pair-uncovered", std::make_pair(a, b), std::nullopt, ""});
      else if (c > 1)
        r.add({"pair-covered-multiply", std::make_pair(a, b), std::nullopt,
               "covered " + std::to_string(c) + " times"});
    }

  return r.report;
}

}  // namespace

VerificationReport verify_gdd(const Design& d, const BlockSizeSet& K) {
  return verify_pairwise(d, K);
}

VerificationReport verify_pbd(const Design& d, const BlockSizeSet& K) {
  for (const auto& g : d.groups)
    if (g.size() != 1) {
      Reporter r;
      r.add({"groups-not-singleton", std::nullopt, std::nullopt,
             "PBD must be stored with singleton groups"});
      return r.report;
    }
  return verify_pairwise(d, K);
}

VerificationReport verify_parallel_class(const Design& d,
                                         const std::vector<int>& class_blocks) {
  Reporter r;
  std::vector<int> covered(d.n, 0);
  std::vector<char> used(d.blocks.size(), 0);

  for (int idx : class_blocks) {
    if (idx < 0 || idx >= static_cast<int>(d.blocks.size())) {
      r.add({"class-bad-index", std::nullopt, idx, "block index out of range"});
      continue;
    }
    if (used[idx]) {
      r.add({"class-overlap", std::nullopt, idx, "block listed twice"});
      continue;
    }
    used[idx] = 1;
    for (int p : d.blocks[idx]) {
      if (p < 0 || p >= d.n) continue;  // structural issue, reported elsewhere
      if (covered[p]++)
        r.add({"class-overlap", std::nullopt, idx,
               "point " + std::to_string(p) + " covered twice"});
    }
  }
  for (int p = 0; p < d.n; ++p)
    if (!covered[p])
      r.add({"class-gap", std::nullopt, std::nullopt,
             "point " + std::to_string(p) + " uncovered"});

  return r.report;
}

GddType compute_type(const Design& d) {
  std::vector<int> sizes;
  sizes.reserve(d.groups.size());
  for (const auto& g : d.groups) sizes.push_back(static_cast<int>(g.size()));

  std::optional<int> distinguished_size;
  if (d.meta.contains("distinguished_group") &&
      d.meta["distinguished_group"].is_number_integer()) {
    int gi = d.meta["distinguished_group"].get<int>();
    if (gi >= 0 && gi < static_cast<int>(d.groups.size()))
      distinguished_size = static_cast<int>(d.groups[gi].size());
  }
  return GddType::from_sizes(std::move(sizes), distinguished_size);
}

std::optional<std::pair<int, int>> uniform_group_shape(const Design& d) {
  if (d.groups.empty()) return std::nullopt;
  const int m = static_cast<int>(d.groups.front().size());
  for (const auto& g : d.groups)
    if (static_cast<int>(g.size()) != m) return std::nullopt;
  return std::make_pair(static_cast<int>(d.groups.size()), m);
}

std::optional<std::pair<int, int>> td_parameters(const Design& d) {
  auto shape = uniform_group_shape(d);
  if (!shape) return std::nullopt;
  auto [k, m] = *shape;
  if (k < 2) return std::nullopt;
  if (!verify_gdd(d, BlockSizeSet{k}).pass) return std::nullopt;
  return shape;
}

}  // namespace forge
