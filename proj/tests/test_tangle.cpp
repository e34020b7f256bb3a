#include <doctest.h>

#include <set>

#include "tangle.hpp"

using namespace ptk::tangle;

namespace {

std::shared_ptr<const ThetaComplex> theta_of(int n) {
  return std::make_shared<const ThetaComplex>(build_theta(n));
}

}  // namespace

TEST_CASE("block extents follow the coordinate formulas") {
  const Box b = block_extent({BlockKind::BLayer, 1, 2}, 3);
  CHECK(b.x0 == 9);
  CHECK(b.x1 == 19);
  CHECK(b.z0 == 2);
  CHECK(b.z1 == 3);
  const Box k = block_extent({BlockKind::KOverlap, 1, 2}, 3);
  CHECK(k.x0 == 18);
  CHECK(k.x1 == 19);
  CHECK(k.z0 == 1);
  CHECK(k.z1 == 2);
  const Box br = block_extent({BlockKind::BBrick, 0, 1}, 3);
  CHECK(br.x0 == 1);
  CHECK(br.x1 == 9);
  CHECK_THROWS_AS(validate_block({BlockKind::CLayer, 0, 1}, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_block({BlockKind::BLayer, 0, 4}, 3, 3), std::invalid_argument);
  CHECK_NOTHROW(validate_block({BlockKind::NOverlap, 0, 0}, 3, 3));
}

TEST_CASE("level tangles list the stated segments") {
  // top level: alpha from a_0 to a_1, gamma from b_1 to c_1
  const auto top = level_column_segments(0, 1, 2, 1);
  REQUIRE(top.size() == 2);
  CHECK(top[0].kind == SegmentKind::Alpha);
  CHECK(top[0].from == LatticePoint{0, 1});
  CHECK(top[0].to == LatticePoint{1, 1});
  CHECK(top[1].kind == SegmentKind::Gamma);
  CHECK(top[1].from == LatticePoint{1, 2});
  CHECK(top[1].to == LatticePoint{1, 3});
  // middle level of n=3 (m=3): three segments
  const auto mid = level_column_segments(1, 2, 3, 3);
  REQUIRE(mid.size() == 3);
  CHECK(mid[0].kind == SegmentKind::Delta);
  CHECK(mid[0].from == LatticePoint{2, 4});
  CHECK(mid[0].to == LatticePoint{2, 5});
  CHECK(mid[1].from == LatticePoint{2, 6});
  CHECK(mid[1].to == LatticePoint{3, 4});
  // bottom level: delta then alpha ending at c
  const auto bot = level_column_segments(1, 1, 2, 1);
  REQUIRE(bot.size() == 2);
  CHECK(bot[1].kind == SegmentKind::Alpha);
  CHECK(bot[1].from == LatticePoint{2, 3});
  CHECK(bot[1].to == LatticePoint{3, 3});
}

TEST_CASE("theta for n=2 walks the stated chain") {
  const auto theta = build_theta(2);
  CHECK(theta.m == 1);
  const auto& chain = theta.components[0];
  REQUIRE(chain.size() == 7);
  CHECK(chain[0].type == ChainElement::Type::Level);
  CHECK(chain[0].level_segment.kind == SegmentKind::Alpha);
  CHECK(chain[0].level_segment.level == 0);
  CHECK(chain[0].level_segment.column == 1);
  CHECK(chain[1].type == ChainElement::Type::Braid);
  CHECK(chain[1].braid_traverse.role == Role::A);
  CHECK(chain[1].braid_traverse.downward);
  CHECK(chain[2].level_segment.kind == SegmentKind::Delta);
  CHECK(chain[2].level_segment.column == 2);
  CHECK(chain[3].braid_traverse.role == Role::B);
  CHECK_FALSE(chain[3].braid_traverse.downward);
  CHECK(chain[4].level_segment.kind == SegmentKind::Gamma);
  CHECK(chain[4].level_segment.column == 1);
  CHECK(chain[5].braid_traverse.role == Role::C);
  CHECK(chain[6].level_segment.kind == SegmentKind::Alpha);
  CHECK(chain[6].level_segment.column == 2);

  // endpoints (2,0,0) and (17,0,3)
  const auto start = component_start(theta, 1);
  const auto end = component_end(theta, 1);
  CHECK(start.x() == 2);
  CHECK(start.p == 0);
  CHECK(end.x() == 17);
  CHECK(end.p == 3);
}

TEST_CASE("phi rows follow the group transpositions") {
  const auto theta = build_theta(3);
  const auto rows = phi_table(theta);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<int>{1, 2, 3});
  CHECK(rows[1] == std::vector<int>{2, 1, 3});
  CHECK(rows[2] == std::vector<int>{3, 1, 2});
  CHECK(rows[3] == std::vector<int>{3, 2, 1});
  CHECK(theta.phi_at(2, 1) == 3);

  const auto t2 = build_theta(2);
  CHECK(t2.phi_at(0, 1) == 1);
  CHECK(t2.phi_at(1, 1) == 2);
}

TEST_CASE("components end at the reversed column for every n") {
  for (int n = 2; n <= 8; ++n) {
    const auto theta = build_theta(n);
    for (int j = 1; j <= n; ++j) {
      CHECK(theta.phi_at(theta.m, j) == n + 1 - j);
      CHECK(component_end(theta, j).q == 3 * (n + 1 - j));
    }
    // every phi row is a permutation
    for (int i = 0; i <= theta.m; ++i) {
      std::set<int> row;
      for (int j = 1; j <= n; ++j) row.insert(theta.phi_at(i, j));
      CHECK(row.size() == static_cast<size_t>(n));
    }
  }
}

TEST_CASE("adjacency witnesses exist and satisfy the postcondition") {
  CHECK(adjacency_witness(build_theta(2), 1, 2) == 0);
  const auto t3 = build_theta(3);
  CHECK(adjacency_witness(t3, 1, 3) == 1);
  CHECK(adjacency_witness(t3, 2, 3) == 0);
  for (int n = 2; n <= 12; ++n) {
    const auto theta = build_theta(n);
    for (int j = 1; j <= n; ++j)
      for (int jp = j + 1; jp <= n; ++jp) {
        const int i = adjacency_witness(theta, j, jp);
        CHECK(theta.phi_at(i, jp) == theta.phi_at(i, j) + 1);
      }
  }
  CHECK_THROWS_AS(adjacency_witness(t3, 2, 2), std::invalid_argument);
}

TEST_CASE("disk incidence counts three interior points and one at each end") {
  const auto t2 = build_theta(2);
  CHECK(disk_incidence(t2, 1, 1) == 3);
  CHECK(disk_incidence(t2, 1, 0) == 1);
  CHECK(disk_incidence(t2, 1, 3) == 1);
  for (int n = 2; n <= 8; ++n) {
    const auto theta = build_theta(n);
    for (int j = 1; j <= n; ++j) {
      CHECK(disk_incidence(theta, j, 0) == 1);
      CHECK(disk_incidence(theta, j, theta.height()) == 1);
      for (int p = 1; p <= theta.height() - 1; ++p) CHECK(disk_incidence(theta, j, p) == 3);
    }
  }
  CHECK_THROWS_AS(disk_incidence(t2, 1, 99), std::invalid_argument);
}

TEST_CASE("subtangle selection and occupancy") {
  auto t3 = theta_of(3);
  CHECK_THROWS_AS(select_subtangle(t3, {}), std::invalid_argument);
  CHECK_THROWS_AS(select_subtangle(t3, {4}), std::invalid_argument);

  const auto sub = select_subtangle(t3, {2});
  std::set<int> columns;
  for (int i = 0; i <= t3->m; ++i) columns.insert(t3->phi_at(i, 2));
  CHECK(columns == std::set<int>{1, 2});

  auto t2 = theta_of(2);
  const auto s1 = select_subtangle(t2, {1});
  CHECK(t2->phi_at(0, 1) == 1);  // meets B_{0,1}
  CHECK(t2->phi_at(1, 1) == 2);  // and B_{1,2}
  CHECK(s1.columns == std::vector<int>{1});

  const auto full = select_subtangle(t2, {1, 2});
  CHECK(full.columns == std::vector<int>{1, 2});
}

TEST_CASE("three-group wiring crosses the meridian disk twice per arc") {
  const auto qt = wire_solid_torus(GroupScheme::ThreeGroup, 1);
  CHECK(qt.arcs.size() == 3);
  CHECK(meridian_crossings(qt, 1) == 2);
  CHECK_NOTHROW(validate_quotient(qt));

  const auto q2 = wire_solid_torus(GroupScheme::ThreeGroup, 2);
  const auto surf = splitting_surface(q2, {1, 2});
  REQUIRE(surf.size() == 1);
  CHECK(surf[0].first == 4);  // disk with 2k holes, chi = 1 - 4 = -3
  CHECK(surf[0].second);
  CHECK(1 - surf[0].first == -3);
  CHECK_THROWS_AS(wire_solid_torus(GroupScheme::ThreeGroup, 0), std::invalid_argument);
}

TEST_CASE("four-group wiring and its endpoint targets") {
  const auto qt = wire_solid_torus(GroupScheme::FourGroup, 1);
  REQUIRE(qt.arcs.size() == 4);
  CHECK(qt.arcs[0].group == ArcGroup::Beta);
  CHECK(qt.arcs[0].end0.site == EndSite::Wall);
  CHECK(qt.arcs[0].end1.site == EndSite::D1);
  CHECK(qt.arcs[1].end0.site == EndSite::D2);
  CHECK(qt.arcs[1].end1.site == EndSite::D2);
  CHECK(qt.arcs[2].end0.site == EndSite::D1);
  CHECK(qt.arcs[2].end1.site == EndSite::H1);
  CHECK(qt.arcs[3].end0.site == EndSite::H2);
  CHECK(qt.arcs[3].end1.site == EndSite::Wall);
  CHECK(meridian_crossings(qt, 1) == 3);

  const auto q3 = wire_solid_torus(GroupScheme::FourGroup, 3);
  for (int j = 1; j <= 3; ++j) CHECK(meridian_crossings(q3, j) == 3);
  const auto surf = splitting_surface(q3, {1, 3});
  REQUIRE(surf.size() == 3);  // two twice-punctured disks and the holed disk
  CHECK(surf[0].first == 2);
  CHECK(surf[1].first == 2);
  CHECK(surf[2].first == 4);
}

TEST_CASE("knot labels attach per companion torus") {
  const auto qt = wire_solid_torus(GroupScheme::FourGroup, 3);
  const auto labeled = insert_knot_spaces(qt, {"k1", "k2", "k3"});
  REQUIRE(labeled.torus_labels.size() == 3);
  CHECK(labeled.torus_labels[0] == "k1");
  CHECK(labeled.torus_labels[2] == "k3");
  CHECK_NOTHROW(validate_quotient(labeled));

  const auto single = insert_knot_spaces(wire_solid_torus(GroupScheme::FourGroup, 1), {"k"});
  CHECK(single.torus_labels[0] == "k");

  CHECK_THROWS_AS(insert_knot_spaces(wire_solid_torus(GroupScheme::FourGroup, 2), {"k"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(insert_knot_spaces(wire_solid_torus(GroupScheme::ThreeGroup, 1), {"k"}),
                  std::invalid_argument);
}
