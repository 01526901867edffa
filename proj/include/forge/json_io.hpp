#pragma once

#include <string>

#include "forge/constructions.hpp"
#include "forge/design.hpp"
#include "forge/difference_family.hpp"

namespace forge {

// Shared design format:
//   {"n": int, "groups": [[int]], "blocks": [[int]],
//    "distinguished": [int], "meta": {...}}
// Serialization is canonical (sorted groups/blocks, compact JSON, trailing
// newline), so equal designs produce identical bytes. Loading validates the
// schema (SchemaError names the offending field) and canonicalizes, which
// also remaps the index-bearing keys this library writes.
Json design_to_json(const Design& d);
Design design_from_json(const Json& j);

Design load_design(const std::string& path);   // ParseError / SchemaError
void save_design(const Design& d, const std::string& path);

// TruncatedTd files add a top-level "deleted_classes": [[block-index]].
Json truncated_td_to_json(const TruncatedTd& t);
void save_truncated_td(const TruncatedTd& t, const std::string& path);

// Difference family format: {"v": int, "base_blocks": [[int]],
// "orbit_lengths": [int]}.
Json difference_family_to_json(const DifferenceFamily& df);
DifferenceFamily difference_family_from_json(const Json& j);
DifferenceFamily load_difference_family(const std::string& path);
void save_difference_family(const DifferenceFamily& df,
                            const std::string& path);

std::string canonical_bytes(const Json& j);
std::string fnv1a64_hex(const std::string& bytes);

Json report_to_json(const VerificationReport& report);

}  // namespace forge
