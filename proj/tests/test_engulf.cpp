#include <doctest.h>

#include <set>

#include "engulf.hpp"

using namespace ptk::engulf;
using ptk::tangle::Subtangle;
using ptk::tangle::ThetaComplex;

namespace {

Subtangle sub_of(int n, std::vector<int> j0) {
  auto theta = std::make_shared<const ThetaComplex>(ptk::tangle::build_theta(n));
  return ptk::tangle::select_subtangle(theta, std::move(j0));
}

int count_kind(const ExcellenceCertificate& cert, CertNode::Kind kind) {
  int c = 0;
  for (const auto& node : cert.nodes)
    if (node.kind == kind) ++c;
  return c;
}

}  // namespace

TEST_CASE("occupancy traces follow the four case rules") {
  // full occupancy is fixed by Case 1
  const auto full = occupancy_trace(sub_of(2, {1, 2}));
  for (const auto& row : full.J) CHECK(row == std::vector<int>{1, 2});
  for (const auto& row : full.I) CHECK(row == std::vector<int>{1, 2});

  // one Case 3 step
  const auto tr = occupancy_trace(sub_of(2, {1}));
  CHECK(tr.J[0] == std::vector<int>{1});
  CHECK(tr.J[1] == std::vector<int>{2});
  CHECK(tr.I[0] == std::vector<int>{1, 2});
  CHECK(tr.T[1] == std::vector<int>{1, 2});

  // Case 4, Case 2, Case 3 composed
  const auto tr3 = occupancy_trace(sub_of(3, {2}));
  CHECK(tr3.J[0] == std::vector<int>{2});
  CHECK(tr3.J[1] == std::vector<int>{1});
  CHECK(tr3.J[2] == std::vector<int>{1});
  CHECK(tr3.J[3] == std::vector<int>{2});
  CHECK(tr3.T.back() == std::vector<int>{1, 2});  // the T_m discrepancy, reproduced
}

TEST_CASE("running unions agree for every subset up to n=8") {
  for (int n = 2; n <= 8; ++n) {
    auto theta = std::make_shared<const ThetaComplex>(ptk::tangle::build_theta(n));
    for (int bits = 1; bits < (1 << n); ++bits) {
      std::vector<int> j0;
      for (int j = 1; j <= n; ++j)
        if (bits >> (j - 1) & 1) j0.push_back(j);
      const auto tr = occupancy_trace(ptk::tangle::select_subtangle(theta, j0));
      for (int i = 1; i <= tr.m; ++i)
        REQUIRE(tr.S[static_cast<size_t>(i) - 1] == tr.T[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("step classification") {
  CHECK(classify_step({1, 2}, 1, 4).kind == CaseKind::BothIn);
  CHECK(classify_step({3}, 1, 4).kind == CaseKind::BothOut);
  CHECK(classify_step({1}, 1, 4).kind == CaseKind::LeftOnly);
  CHECK(classify_step({2}, 1, 4).kind == CaseKind::RightOnly);
  const auto sc = classify_step({1, 2, 3, 4}, 2, 4);
  CHECK(sc.kind == CaseKind::BothIn);
  CHECK(sc.left_neighbor_in);
  CHECK(sc.right_neighbor_in);
  CHECK_THROWS_AS(classify_step({1}, 9, 4), std::invalid_argument);
}

TEST_CASE("gluing check arithmetic") {
  CHECK(check_gluing({{3, true}}).passed);   // chi = -2
  CHECK(1 - 3 == -2);
  CHECK_FALSE(check_gluing({{1, true}}).passed);  // chi = 0
  CHECK_FALSE(check_gluing({}).passed);           // empty interface
  CHECK(check_gluing({{2, true}, {6, true}}).passed);
  CHECK_FALSE(check_gluing({{6, true}, {0, true}}).passed);
}

TEST_CASE("full subtangle of n=2: two leaves joined by one six-punctured glue") {
  const auto cert = engulf_verify(sub_of(2, {1, 2}));
  CHECK(count_kind(cert, CertNode::Kind::Leaf) == 2);
  CHECK(count_kind(cert, CertNode::Kind::Glue) == 1);
  for (const auto& node : cert.nodes) {
    if (node.kind != CertNode::Kind::Glue) continue;
    REQUIRE(node.check.interfaces.size() == 1);
    CHECK(node.check.interfaces[0].punctures == 6);
    CHECK(node.check.interfaces[0].is_disk_portion);
    CHECK(1 - node.check.interfaces[0].punctures == -5);
  }
  CHECK(cert.untouched_columns.empty());
  CHECK(validate_certificate(cert).passed);
}

TEST_CASE("single component of n=2 follows the downward-expansion path") {
  const auto cert = engulf_verify(sub_of(2, {1}));
  CHECK(count_kind(cert, CertNode::Kind::Leaf) == 2);
  CHECK(count_kind(cert, CertNode::Kind::Glue) == 1);
  CHECK(count_kind(cert, CertNode::Kind::Ball) >= 2);  // the vacated brick and the stack above
  for (const auto& node : cert.nodes) {
    if (node.kind != CertNode::Kind::Glue) continue;
    REQUIRE(node.check.interfaces.size() == 1);
    CHECK(node.check.interfaces[0].punctures == 3);
  }
  CHECK(validate_certificate(cert).passed);
}

TEST_CASE("n=3 middle component needs the untouched-column pass") {
  const auto cert = engulf_verify(sub_of(3, {2}));
  CHECK(cert.untouched_columns == std::vector<int>{3});
  REQUIRE_FALSE(cert.notes.empty());
  CHECK(validate_certificate(cert).passed);
}

TEST_CASE("certificates cover the box exactly once") {
  const auto check_coverage = [](const ExcellenceCertificate& cert) {
    std::set<Cell> seen;
    for (const auto& node : cert.nodes)
      for (const auto& c : node.cells) REQUIRE(seen.insert(c).second);
    CHECK(static_cast<int>(seen.size()) ==
          grid_width(cert.n) * grid_height(cert.trace.m));
  };
  check_coverage(engulf_verify(sub_of(2, {1})));
  check_coverage(engulf_verify(sub_of(3, {2})));
  check_coverage(engulf_verify(sub_of(4, {2, 4})));
}

TEST_CASE("every subset up to n=6 verifies and validates") {
  for (int n = 2; n <= 6; ++n) {
    auto theta = std::make_shared<const ThetaComplex>(ptk::tangle::build_theta(n));
    for (int bits = 1; bits < (1 << n); ++bits) {
      std::vector<int> j0;
      for (int j = 1; j <= n; ++j)
        if (bits >> (j - 1) & 1) j0.push_back(j);
      const auto sub = ptk::tangle::select_subtangle(theta, j0);
      ExcellenceCertificate cert;
      REQUIRE_NOTHROW(cert = engulf_verify(sub));
      const auto verdict = validate_certificate(cert);
      if (!verdict.passed) {
        CAPTURE(n);
        CAPTURE(bits);
        CAPTURE(verdict.message);
      }
      REQUIRE(verdict.passed);
    }
  }
}

TEST_CASE("glue punctures agree with a disk-incidence recount") {
  for (int n = 2; n <= 5; ++n) {
    auto theta = std::make_shared<const ThetaComplex>(ptk::tangle::build_theta(n));
    for (int bits = 1; bits < (1 << n); ++bits) {
      std::vector<int> j0;
      for (int j = 1; j <= n; ++j)
        if (bits >> (j - 1) & 1) j0.push_back(j);
      const auto sub = ptk::tangle::select_subtangle(theta, j0);
      const auto cert = engulf_verify(sub);
      // total punctures of the glue nodes at each slab boundary equal the
      // disk incidences of the chosen components there
      std::vector<long> by_height(static_cast<size_t>(2 * cert.trace.m + 1), 0);
      for (const auto& node : cert.nodes) {
        if (node.kind != CertNode::Kind::Glue) continue;
        // recount via the occupancy rows: every glue at layer L sits at
        // height 2L-1, which is the leaf child's level
        int level = -1;
        for (int ch : node.children) {
          const auto& child = cert.nodes[static_cast<size_t>(ch)];
          if (child.kind == CertNode::Kind::Leaf && child.level > 0) level = child.level;
        }
        REQUIRE(level > 0);
        long total = 0;
        for (const auto& s : node.check.interfaces) total += s.punctures;
        by_height[static_cast<size_t>(2 * level - 1)] += total;
      }
      for (int level = 1; level <= cert.trace.m; ++level) {
        long expected = 0;
        for (int j : j0) expected += ptk::tangle::disk_incidence(*theta, j, 2 * level - 1);
        CHECK(by_height[static_cast<size_t>(2 * level - 1)] == expected);
      }
    }
  }
}

TEST_CASE("tampered certificates are rejected") {
  const auto good = engulf_verify(sub_of(2, {1}));
  REQUIRE(validate_certificate(good).passed);

  SUBCASE("width-one leaf") {
    auto bad = good;
    for (auto& node : bad.nodes)
      if (node.kind == CertNode::Kind::Leaf) node.strand_width = 1;
    CHECK_FALSE(validate_certificate(bad).passed);
  }
  SUBCASE("two-interface ball adjunction") {
    auto bad = good;
    for (auto& node : bad.nodes)
      if (node.kind == CertNode::Kind::Ball) node.interface_count = 2;
    CHECK_FALSE(validate_certificate(bad).passed);
  }
  SUBCASE("understated glue punctures") {
    auto bad = good;
    for (auto& node : bad.nodes)
      if (node.kind == CertNode::Kind::Glue)
        for (auto& s : node.check.interfaces) s.punctures = 1;
    CHECK_FALSE(validate_certificate(bad).passed);
  }
  SUBCASE("doctored occupancy trace") {
    auto bad = good;
    bad.trace.J[1] = {1};
    CHECK_FALSE(validate_certificate(bad).passed);
  }
  SUBCASE("missing cells") {
    auto bad = good;
    bad.nodes.back().cells.pop_back();
    CHECK_FALSE(validate_certificate(bad).passed);
  }
}
