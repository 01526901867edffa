#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "forge/json_io.hpp"
#include "forge/pipelines.hpp"

using namespace forge;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("io_test_" + name + ".json") {}
  ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("designs round-trip through JSON") {
  const Design td = build_td(3, 2);
  TempFile f("roundtrip");
  save_design(td, f.path);
  const Design back = load_design(f.path);
  CHECK(back.n == td.n);
  CHECK(back.groups == td.groups);
  CHECK(back.blocks == td.blocks);
  CHECK(back.distinguished == td.distinguished);
  CHECK(back.meta == td.meta);

  // saving again is byte-identical
  TempFile g("roundtrip2");
  save_design(back, g.path);
  CHECK(read_text(f.path) == read_text(g.path));
}

TEST_CASE("canonical serialization is byte-stable") {
  CHECK(canonical_bytes(design_to_json(build_td(3, 2))) ==
        "{\"n\":6,\"groups\":[[0,1],[2,3],[4,5]],"
        "\"blocks\":[[0,2,4],[0,3,5],[1,2,5],[1,3,4]],"
        "\"distinguished\":[],"
        "\"meta\":{\"construction\":\"td\",\"k\":3,\"q\":2}}\n");
}

TEST_CASE("identical constructions serialize identically") {
  const std::string a = canonical_bytes(design_to_json(corollary2(11, 0).gdd));
  const std::string b = canonical_bytes(design_to_json(corollary2(11, 0).gdd));
  CHECK(a == b);
  CHECK(fnv1a64_hex(a) == fnv1a64_hex(b));
}

TEST_CASE("schema violations name the offending field") {
  TempFile f("schema");
  auto schema_error_mentions = [&](const std::string& needle) {
    try {
      (void)load_design(f.path);
    } catch (const Error& e) {
      return e.code() == Errc::SchemaError &&
             std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };

  write_text(f.path, R"({"n": 4, "groups": [[0,1],[1,2,3]], "blocks": []})");
  CHECK(schema_error_mentions("groups"));

  write_text(f.path, R"({"n": 3, "groups": [[0],[1],[2]], "blocks": [[0,3]]})");
  CHECK(schema_error_mentions("blocks"));

  write_text(f.path, R"({"n": 2, "groups": [[0],[1]], "blocks": [], "x": 1})");
  CHECK(schema_error_mentions("unknown field"));

  write_text(f.path, "not json");
  try {
    (void)load_design(f.path);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("loading canonicalizes and remaps block indices") {
  TempFile f("canon");
  write_text(f.path,
             R"({"n": 4, "groups": [[1,0],[3,2]],
                 "blocks": [[1,3],[0,2],[0,3],[2,1]],
                 "distinguished": [0],
                 "meta": {"parallel_class": [0, 1]}})");
  const Design d = load_design(f.path);
  CHECK(d.groups == std::vector<Block>{{0, 1}, {2, 3}});
  CHECK(d.blocks == std::vector<Block>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(d.distinguished == std::vector<int>{3});  // [1,3] moved to the end
  CHECK(d.meta["parallel_class"] == Json::array({0, 3}));
}

TEST_CASE("truncated designs carry their deleted classes") {
  const TruncatedTd trunc = truncate_td(build_td(4, 3), 1);
  const Json j = truncated_td_to_json(trunc);
  REQUIRE(j.contains("deleted_classes"));
  CHECK(j["deleted_classes"].size() == 2);

  TempFile f("trunc");
  save_truncated_td(trunc, f.path);
  const Design back = load_design(f.path);  // extra key is tolerated
  CHECK(back.n == trunc.design.n);
}

TEST_CASE("difference families round-trip") {
  const DifferenceFamily df = search_difference_family_group({3, 15}, 5);
  TempFile f("df");
  save_difference_family(df, f.path);
  const DifferenceFamily back = load_difference_family(f.path);
  CHECK(back.v == df.v);
  CHECK(back.base_blocks == df.base_blocks);
  CHECK(back.orbit_lengths == df.orbit_lengths);
}

TEST_CASE("verification reports serialize") {
  Design broken = build_td(3, 2);
  broken.blocks.pop_back();
  const Json j = report_to_json(verify_gdd(broken, BlockSizeSet{3}));
  CHECK(j["verdict"] == "fail");
  CHECK(j["violations"].size() >= 1);
  CHECK(report_to_json(verify_gdd(build_td(3, 2), BlockSizeSet{3}))["verdict"] ==
        "pass");
}
