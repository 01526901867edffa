#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

using Json = nlohmann::ordered_json;

// A block (or group) is a strictly increasing list of point ids.
using Block = std::vector<int>;

// The universal design object. GDDs, PBDs and TDs are all stored this way;
// a PBD is a design whose groups are all singletons. Points are dense
// integers 0..n-1. Canonical form: every group/block sorted ascending,
// groups and blocks each sorted lexicographically, distinguished indices
// ascending.
struct Design {
  int n = 0;
  std::vector<Block> groups;
  std::vector<Block> blocks;
  std::vector<int> distinguished;  // block indices exempt from size checks
  Json meta = Json::object();

  bool is_distinguished(int block_index) const;
};

// Index remappings produced by canonicalize(): old index -> new index.
struct CanonicalMaps {
  std::vector<int> group_map;
  std::vector<int> block_map;
};

// Sorts groups/blocks into canonical order and remaps the `distinguished`
// field plus the index-bearing meta keys this library writes
// ("distinguished_group", "parallel_class", "parallel_classes", "b0_block").
CanonicalMaps canonicalize(Design& d);

// First structural problem (partition broken, bad point, repeated point,
// non-distinguished block of size < 2), or nullopt if well-formed.
std::optional<std::string> structural_error(const Design& d);

// Group id per point; requires a well-formed partition.
std::vector<int> point_group_ids(const Design& d);

// Multiset of group sizes in exponential notation. The rendering
// keeps a distinguished group (meta "distinguished_group") as its own
// trailing term, matching how constructed types like "5^44 29^1" are
// written; equality compares the underlying multisets.
class GddType {
 public:
  GddType() = default;

  static GddType from_sizes(std::vector<int> sizes,
                            std::optional<int> distinguished_size = std::nullopt);
  static GddType parse(const std::string& text);  // e.g. "5^44 29^1" or "4^5 17"

  const std::map<int, int>& multiset() const { return multiset_; }
  std::string to_string() const;

  friend bool operator==(const GddType& a, const GddType& b) {
    return a.multiset_ == b.multiset_;
  }

 private:
  std::vector<std::pair<int, int>> terms_;  // (size, exponent) in render order
  std::map<int, int> multiset_;             // size -> multiplicity
};

// Set K of admissible block sizes; every element must be >= 2.
class BlockSizeSet {
 public:
  BlockSizeSet() = default;
  BlockSizeSet(std::initializer_list<int> sizes);
  explicit BlockSizeSet(std::vector<int> sizes);

  bool contains(int k) const;
  const std::vector<int>& sizes() const { return sizes_; }
  std::string to_string() const;  // "{4,5}"

 private:
  std::vector<int> sizes_;  // sorted, unique
};

struct Violation {
  std::string axiom;                       // e.g. "pair-uncovered"
  std::optional<std::pair<int, int>> pair; // witness pair of points
  std::optional<int> block;                // witness block index
  std::string detail;
};

struct VerificationReport {
  bool pass = true;
  std::vector<Violation> violations;

  const Violation& first() const { return violations.front(); }
  std::string summary() const;
};

// Cap on recorded violations; scanning order is deterministic so the
// retained prefix is stable.
inline constexpr int kMaxViolations = 64;

GddType compute_type(const Design& d);

// GDD axioms: every cross-group pair in exactly one block, |G ∩ A| <= 1,
// block sizes in K (distinguished blocks exempt). Counts all C(n,2) pairs.
VerificationReport verify_gdd(const Design& d, const BlockSizeSet& K);

// PBD axioms: singleton groups, every pair in exactly one block, sizes in K
// (distinguished blocks exempt, which admits the degenerate size-1 block).
VerificationReport verify_pbd(const Design& d, const BlockSizeSet& K);

// The selected blocks are pairwise disjoint and cover every point.
VerificationReport verify_parallel_class(const Design& d,
                                         const std::vector<int>& class_blocks);

// (m, k) such that d has k groups of size m each, if it does.
std::optional<std::pair<int, int>> uniform_group_shape(const Design& d);

// Convenience: d verifies as a TD(k, m); returns (k, m).
std::optional<std::pair<int, int>> td_parameters(const Design& d);

}  // namespace forge
