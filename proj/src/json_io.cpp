#include "forge/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace forge {

namespace {

std::vector<Block> block_list_from_json(const Json& j, const char* field) {
  require(j.is_array(), Errc::SchemaError,
          std::string(field) + " must be an array of arrays");
  std::vector<Block> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_array(), Errc::SchemaError,
            std::string(field) + "[" + std::to_string(i) +
                "] must be an array");
    Block b;
    for (const auto& v : j[i]) {
      require(v.is_number_integer(), Errc::SchemaError,
              std::string(field) + "[" + std::to_string(i) +
                  "] must contain integers");
      b.push_back(v.get<int>());
    }
    out.push_back(std::move(b));
  }
  return out;
}

Json block_list_to_json(const std::vector<Block>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(b);
  return out;
}

}  // namespace

Json design_to_json(const Design& d) {
  Json j;
  j["n"] = d.n;
  j["groups"] = block_list_to_json(d.groups);
  j["blocks"] = block_list_to_json(d.blocks);
  j["distinguished"] = d.distinguished;
  j["meta"] = d.meta;
  return j;
}

Design design_from_json(const Json& j) {
  require(j.is_object(), Errc::SchemaError, "design must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "n" && key != "groups" && key != "blocks" &&
        key != "distinguished" && key != "meta" && key != "deleted_classes")
      raise(Errc::SchemaError, "unknown field '" + key + "'");
  }
  require(j.contains("n") && j["n"].is_number_integer(), Errc::SchemaError,
          "n must be an integer");
  require(j.contains("groups") && j.contains("blocks"), Errc::SchemaError,
          "groups and blocks are required");

  Design d;
  d.n = j["n"].get<int>();
  require(d.n >= 0, Errc::SchemaError, "n must be nonnegative");
  d.groups = block_list_from_json(j["groups"], "groups");
  d.blocks = block_list_from_json(j["blocks"], "blocks");
  if (j.contains("distinguished")) {
    require(j["distinguished"].is_array(), Errc::SchemaError,
            "distinguished must be an array of block indices");
    for (const auto& v : j["distinguished"]) {
      require(v.is_number_integer(), Errc::SchemaError,
              "distinguished must contain integers");
      d.distinguished.push_back(v.get<int>());
    }
    std::sort(d.distinguished.begin(), d.distinguished.end());
    d.distinguished.erase(
        std::unique(d.distinguished.begin(), d.distinguished.end()),
        d.distinguished.end());
  }
  if (j.contains("meta")) {
    require(j["meta"].is_object(), Errc::SchemaError,
            "meta must be an object");
    d.meta = j["meta"];
  }

  for (auto& g : d.groups) std::sort(g.begin(), g.end());
  for (auto& b : d.blocks) std::sort(b.begin(), b.end());
  if (auto err = structural_error(d)) raise(Errc::SchemaError, *err);
  canonicalize(d);
  return d;
}

Design load_design(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    raise(Errc::ParseError, path + ": " + e.what());
  }
  return design_from_json(j);
}

std::string canonical_bytes(const Json& j) { return j.dump() + "\n"; }

void save_design(const Design& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::ParseError, "cannot write " + path);
  out << canonical_bytes(design_to_json(d));
}

Json truncated_td_to_json(const TruncatedTd& t) {
  Json j = design_to_json(t.design);
  j["deleted_classes"] = t.deleted_point_classes;
  return j;
}

void save_truncated_td(const TruncatedTd& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::ParseError, "cannot write " + path);
  out << canonical_bytes(truncated_td_to_json(t));
}

Json difference_family_to_json(const DifferenceFamily& df) {
  Json j;
  j["v"] = df.v;
  if (!df.factors.empty() &&
      df.factors != std::vector<int>{df.v})  // cyclic is the default
    j["factors"] = df.factors;
  j["base_blocks"] = block_list_to_json(df.base_blocks);
  j["orbit_lengths"] = df.orbit_lengths;
  return j;
}

DifferenceFamily difference_family_from_json(const Json& j) {
  require(j.is_object(), Errc::SchemaError,
          "difference family must be a JSON object");
  require(j.contains("v") && j["v"].is_number_integer(), Errc::SchemaError,
          "v must be an integer");
  DifferenceFamily df;
  df.v = j["v"].get<int>();
  if (j.contains("factors")) {
    require(j["factors"].is_array(), Errc::SchemaError,
            "factors must be an array");
    for (const auto& f : j["factors"]) {
      require(f.is_number_integer(), Errc::SchemaError,
              "factors must contain integers");
      df.factors.push_back(f.get<int>());
    }
  }
  require(j.contains("base_blocks"), Errc::SchemaError,
          "base_blocks is required");
  df.base_blocks = block_list_from_json(j["base_blocks"], "base_blocks");
  if (j.contains("orbit_lengths")) {
    require(j["orbit_lengths"].is_array(), Errc::SchemaError,
            "orbit_lengths must be an array");
    for (const auto& v : j["orbit_lengths"]) {
      require(v.is_number_integer(), Errc::SchemaError,
              "orbit_lengths must contain integers");
      df.orbit_lengths.push_back(v.get<int>());
    }
  } else {
    df.orbit_lengths.assign(df.base_blocks.size(), df.v);
  }
  return df;
}

DifferenceFamily load_difference_family(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    raise(Errc::ParseError, path + ": " + e.what());
  }
  return difference_family_from_json(j);
}

void save_difference_family(const DifferenceFamily& df,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::ParseError, "cannot write " + path);
  out << canonical_bytes(difference_family_to_json(df));
}

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4)
    out << ((h >> shift) & 0xF);
  return out.str();
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["verdict"] = report.pass ? "pass" : "fail";
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    item["axiom"] = v.axiom;
    if (v.pair) item["pair"] = Json::array({v.pair->first, v.pair->second});
    if (v.block) item["block"] = *v.block;
    if (!v.detail.empty()) item["detail"] = v.detail;
    violations.push_back(std::move(item));
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace forge
