#include <doctest.h>

#include <set>

#include "forge/constructions.hpp"
#include "test_helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("build_td produces verified transversal designs") {
  const Design td32 = build_td(3, 2);
  CHECK(td32.n == 6);
  CHECK(td32.blocks.size() == 4);
  CHECK(compute_type(td32).to_string() == "2^3");
  CHECK(verify_gdd(td32, BlockSizeSet{3}).pass);

  const Design td611 = build_td(6, 11);
  CHECK(td611.blocks.size() == 121);
  CHECK(verify_gdd(td611, BlockSizeSet{6}).pass);
}

TEST_CASE("build_td rejects k beyond q+1 and bad q") {
  CHECK_THROWS_AS((void)build_td(6, 4), Error);
  try {
    (void)build_td(6, 4);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KTooLarge);
  }
  CHECK_THROWS_AS((void)build_td(3, 6), Error);
  CHECK_THROWS_AS((void)build_td(1, 4), Error);
}

TEST_CASE("TD block intersections and point replication") {
  for (auto [k, q] : {std::pair{3, 3}, {4, 3}, {5, 4}}) {
    const Design td = build_td(k, q);
    for (std::size_t i = 0; i < td.blocks.size(); ++i)
      for (std::size_t j = i + 1; j < td.blocks.size(); ++j) {
        std::vector<int> common;
        std::set_intersection(td.blocks[i].begin(), td.blocks[i].end(),
                              td.blocks[j].begin(), td.blocks[j].end(),
                              std::back_inserter(common));
        CHECK(common.size() <= 1);
      }
    std::vector<int> replication(td.n, 0);
    for (const auto& b : td.blocks)
      for (int p : b) replication[p]++;
    for (int p = 0; p < td.n; ++p) CHECK(replication[p] == q);
  }
}

TEST_CASE("affine planes come with labeled parallel classes") {
  const Design tiny = build_affine_plane(2);
  CHECK(tiny.n == 4);
  CHECK(tiny.blocks.size() == 6);
  CHECK(tiny.meta.at("parallel_classes").size() == 3);

  for (int q : {2, 3, 4, 5, 7}) {
    CAPTURE(q);
    const Design plane = build_affine_plane(q);
    CHECK(plane.n == q * q);
    CHECK(static_cast<int>(plane.blocks.size()) == q * q + q);
    CHECK(verify_pbd(plane, BlockSizeSet{q}).pass);

    const auto& classes = plane.meta.at("parallel_classes");
    REQUIRE(static_cast<int>(classes.size()) == q + 1);
    std::set<int> seen;
    for (const auto& cls : classes) {
      auto indices = cls.get<std::vector<int>>();
      CHECK(static_cast<int>(indices.size()) == q);
      CHECK(verify_parallel_class(plane, indices).pass);
      seen.insert(indices.begin(), indices.end());
    }
    CHECK(seen.size() == plane.blocks.size());  // classes partition the lines
  }
  CHECK_THROWS_AS((void)build_affine_plane(6), Error);
}

TEST_CASE("projective planes verify") {
  const Design f = build_projective_plane(2);
  CHECK(f.n == 7);
  CHECK(f.blocks.size() == 7);
  CHECK(verify_pbd(f, BlockSizeSet{3}).pass);

  const Design pg4 = build_projective_plane(4);
  CHECK(pg4.n == 21);
  CHECK(pg4.blocks.front().size() == 5);
  CHECK(verify_pbd(pg4, BlockSizeSet{5}).pass);

  const Design pg7 = build_projective_plane(7);
  CHECK(pg7.n == 57);
  CHECK(pg7.blocks.front().size() == 8);
  CHECK(verify_pbd(pg7, BlockSizeSet{8}).pass);
}

TEST_CASE("delete_point turns planes into GDDs") {
  Design pg4 = build_projective_plane(4);
  const Design td54 = delete_point(pg4, pg4.n - 1);
  CHECK(compute_type(td54).to_string() == "4^5");
  CHECK(verify_gdd(td54, BlockSizeSet{5}).pass);
  CHECK(td_parameters(td54) == std::pair{5, 4});  // it is a TD(5,4)

  Design ag5 = build_affine_plane(5);
  const Design gdd = delete_point(ag5, ag5.n - 1);
  CHECK(compute_type(gdd).to_string() == "4^6");
  CHECK(verify_gdd(gdd, BlockSizeSet{5}).pass);

  Design pg7 = build_projective_plane(7);
  const Design gdd78 = delete_point(pg7, pg7.n - 1);
  CHECK(compute_type(gdd78).to_string() == "7^8");
  CHECK(verify_gdd(gdd78, BlockSizeSet{8}).pass);
}

TEST_CASE("delete_point wants a single block size") {
  Design mixed = make_pbd(4, {{0, 1, 2}, {0, 3}, {1, 3}, {2, 3}});
  CHECK(verify_pbd(mixed, BlockSizeSet{2, 3}).pass);
  CHECK_THROWS_AS((void)delete_point(mixed, 0), Error);
}

TEST_CASE("delete_point on PG(2,q) yields a TD(q+1,q)") {
  for (int q : {2, 3, 4}) {
    CAPTURE(q);
    Design plane = build_projective_plane(q);
    const Design td = delete_point(plane, plane.n - 1);
    CHECK(td_parameters(td) == std::pair{q + 1, q});
  }
}

TEST_CASE("truncate_td records induced classes") {
  const TruncatedTd trunc = truncate_td(build_td(6, 11), 4);
  CHECK(compute_type(trunc.design).to_string() == "11^5 4^1");
  REQUIRE(trunc.deleted_point_classes.size() == 7);

  const int ell = 5, m = 11;
  int class_blocks = 0;
  for (const auto& cls : trunc.deleted_point_classes) {
    CHECK(static_cast<int>(cls.size()) == m);
    std::set<int> covered;
    for (int idx : cls) {
      CHECK(static_cast<int>(trunc.design.blocks[idx].size()) == ell);
      covered.insert(trunc.design.blocks[idx].begin(),
                     trunc.design.blocks[idx].end());
    }
    CHECK(static_cast<int>(covered.size()) == ell * m);  // partitions them
    class_blocks += static_cast<int>(cls.size());
  }
  CHECK(class_blocks == (m - trunc.t) * m);

  // every surviving block of size ell+1 meets the last group
  std::set<int> last(trunc.design.groups[trunc.last_group].begin(),
                     trunc.design.groups[trunc.last_group].end());
  for (const auto& b : trunc.design.blocks)
    if (b.size() == 6) {
      int meet = 0;
      for (int p : b) meet += last.count(p);
      CHECK(meet == 1);
    }
}

TEST_CASE("truncate_td small and degenerate cases") {
  const TruncatedTd small = truncate_td(build_td(3, 2), 1);
  CHECK(compute_type(small.design).to_string() == "2^2 1^1");
  CHECK(small.deleted_point_classes.size() == 1);

  const Design td = build_td(4, 3);
  const TruncatedTd identity = truncate_td(td, 3);
  CHECK(identity.deleted_point_classes.empty());
  CHECK(identity.design.blocks == td.blocks);
  CHECK(identity.design.groups == td.groups);

  const TruncatedTd gone = truncate_td(td, 0);
  CHECK(gone.last_group == -1);
  CHECK(compute_type(gone.design).to_string() == "3^3");
  CHECK(gone.deleted_point_classes.size() == 3);

  CHECK_THROWS_AS((void)truncate_td(td, 4), Error);
  CHECK_THROWS_AS((void)truncate_td(build_affine_plane(2), 1), Error);
}

TEST_CASE("td_from_affine_plane yields a TD(q,q) with q disjoint blocks") {
  auto [td, disjoint] = td_from_affine_plane(7);
  CHECK(td_parameters(td) == std::pair{7, 7});
  REQUIRE(disjoint.size() == 7);
  CHECK(verify_parallel_class(td, disjoint).pass);  // 7 x 7 = all 49 points
}
