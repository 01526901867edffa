#include <doctest.h>

#include "forge/difference_family.hpp"

using namespace forge;

TEST_CASE("developing {0,1,3} mod 7 gives the Fano plane") {
  DifferenceFamily df{.v = 7, .factors = {}, .base_blocks = {{0, 1, 3}}, .orbit_lengths = {7}};
  const Design d = develop_difference_family(df);
  CHECK(d.n == 7);
  CHECK(d.blocks.size() == 7);
  CHECK(verify_pbd(d, BlockSizeSet{3}).pass);
}

TEST_CASE("developing {0,1,3,9} mod 13 gives a (13,4,1)-BIBD") {
  DifferenceFamily df{.v = 13, .factors = {}, .base_blocks = {{0, 1, 3, 9}}, .orbit_lengths = {13}};
  const Design d = develop_difference_family(df);
  CHECK(d.blocks.size() == 13);
  CHECK(verify_pbd(d, BlockSizeSet{4}).pass);
}

TEST_CASE("a bad base block is rejected by post-verification") {
  DifferenceFamily df{.v = 7, .factors = {}, .base_blocks = {{0, 1, 2}}, .orbit_lengths = {7}};  // difference 1 covered twice
  CHECK_THROWS_AS((void)develop_difference_family(df), Error);
}

TEST_CASE("search finds (7,3) and its development verifies") {
  const DifferenceFamily df = search_difference_family(7, 3);
  REQUIRE(df.base_blocks.size() == 1);
  CHECK(df.base_blocks[0] == Block{0, 1, 3});
  CHECK(verify_pbd(develop_difference_family(df), BlockSizeSet{3}).pass);
}

TEST_CASE("search finds (13,4)") {
  const DifferenceFamily df = search_difference_family(13, 4);
  REQUIRE(df.base_blocks.size() == 1);
  CHECK(df.base_blocks[0] == Block{0, 1, 3, 9});
}

TEST_CASE("search finds the classical cyclic (41,5,1) family") {
  const DifferenceFamily df = search_difference_family(41, 5);
  REQUIRE(df.base_blocks.size() == 2);
  CHECK(df.base_blocks[0] == Block{0, 1, 4, 11, 29});
  CHECK(df.base_blocks[1] == Block{0, 2, 8, 17, 22});
  const Design d = develop_difference_family(df);
  CHECK(d.blocks.size() == 82);  // 41*40/20
  CHECK(verify_pbd(d, BlockSizeSet{5}).pass);
}

TEST_CASE("no cyclic (45,5,1) family exists; the search exhausts honestly") {
  // the short-orbit block over Z_45 is forced up to translation, and the
  // remaining two full orbits cannot cover the other 40 differences
  try {
    (void)search_difference_family(45, 5);
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotFound);
  }
}

TEST_CASE("the (45,5,1) family over Z3 x Z15 works") {
  const DifferenceFamily df = search_difference_family_group({3, 15}, 5);
  CHECK(df.v == 45);
  REQUIRE(df.base_blocks.size() == 3);

  int short_orbits = 0;
  for (std::size_t i = 0; i < df.base_blocks.size(); ++i)
    if (df.orbit_lengths[i] < df.v) {
      ++short_orbits;
      // the order-5 subgroup of Z3 x Z15 under the mixed-radix encoding
      CHECK(df.base_blocks[i] == Block{0, 3, 6, 9, 12});
      CHECK(df.orbit_lengths[i] == 9);
    }
  CHECK(short_orbits == 1);

  const Design d = develop_difference_family(df);
  CHECK(d.blocks.size() == 99);  // 45*44/20
  CHECK(verify_pbd(d, BlockSizeSet{5}).pass);
}

TEST_CASE("each group difference is hit exactly v times in a development") {
  const Design d =
      develop_difference_family(search_difference_family_group({3, 15}, 5));
  // difference (a - b) in Z3 x Z15, mixed radix
  auto diff = [](int a, int b) {
    const int da = ((a / 15 - b / 15) % 3 + 3) % 3;
    const int db = ((a % 15 - b % 15) % 15 + 15) % 15;
    return da * 15 + db;
  };
  std::vector<int> hits(45, 0);
  for (const auto& b : d.blocks)
    for (int x : b)
      for (int y : b)
        if (x != y) hits[diff(y, x)]++;
  for (int g = 1; g < 45; ++g) CHECK(hits[g] == 45);
}

TEST_CASE("abelian groups are enumerated in invariant-factor form") {
  CHECK(abelian_groups_of_order(45) ==
        std::vector<std::vector<int>>{{45}, {3, 15}});
  CHECK(abelian_groups_of_order(12) ==
        std::vector<std::vector<int>>{{12}, {2, 6}});
  CHECK(abelian_groups_of_order(7) == std::vector<std::vector<int>>{{7}});
  CHECK(abelian_groups_of_order(8) ==
        std::vector<std::vector<int>>{{8}, {2, 4}, {2, 2, 2}});
}

TEST_CASE("infeasible parameters are reported") {
  CHECK_THROWS_AS((void)search_difference_family(8, 3), Error);
  try {
    (void)search_difference_family(8, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Infeasible);
  }
}
