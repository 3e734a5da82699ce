#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ectrl/mesh.hpp"

using namespace ectrl;

TEST_CASE("smallest grids have the documented counts") {
  const auto m1 = build_structured_mesh(1);
  CHECK(m1.node_count() == 4);
  CHECK(m1.element_count() == 2);
  CHECK(interior_indices(m1).empty());
  for (int k = 0; k < 4; ++k) {
    CHECK(m1.boundary_mask[k] == 1);
  }

  const auto m2 = build_structured_mesh(2);
  CHECK(m2.node_count() == 9);
  CHECK(m2.element_count() == 8);
  const auto interior = interior_indices(m2);
  REQUIRE(interior.size() == 1);
  CHECK(m2.nodes[interior[0]][0] == doctest::Approx(0.5));
  CHECK(m2.nodes[interior[0]][1] == doctest::Approx(0.5));

  CHECK(interior_indices(build_structured_mesh(4)).size() == 9);
}

TEST_CASE("paper-scale mesh: N = 32768 elements, M = 16129 interior dofs") {
  const auto mesh = build_structured_mesh(128);
  CHECK(mesh.element_count() == 32768);
  CHECK(interior_indices(mesh).size() == 16129);
  CHECK(mesh.node_count() == 129 * 129);
}

TEST_CASE("element areas are positive and sum to the domain area") {
  for (int n : {1, 2, 5, 16}) {
    const auto mesh = build_structured_mesh(n);
    double total = 0.0;
    for (int e = 0; e < mesh.element_count(); ++e) {
      const double area = element_area(mesh, e);
      CHECK(area > 0.0);
      total += area;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mesh.h == doctest::Approx(std::sqrt(2.0) / n));
  }
}

TEST_CASE("conformity: interior edges shared by 2 elements, boundary edges by 1") {
  const auto mesh = build_structured_mesh(6);
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& el : mesh.elements) {
    for (int i = 0; i < 3; ++i) {
      const int a = el[i];
      const int b = el[(i + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}] += 1;
    }
  }
  for (const auto& [edge, count] : edge_count) {
    const bool on_boundary = mesh.boundary_mask[edge.first] && mesh.boundary_mask[edge.second];
    if (count == 1) {
      CHECK(on_boundary);
    } else {
      CHECK(count == 2);
    }
  }
}

TEST_CASE("boundary mask marks exactly the nodes on the unit-square boundary") {
  const auto mesh = build_structured_mesh(5);
  for (int k = 0; k < mesh.node_count(); ++k) {
    const double x = mesh.nodes[k][0];
    const double y = mesh.nodes[k][1];
    const bool expected = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
    CHECK(static_cast<bool>(mesh.boundary_mask[k]) == expected);
  }
}

TEST_CASE("node ordering is lexicographic by (y, x)") {
  const auto mesh = build_structured_mesh(3);
  for (int k = 1; k < mesh.node_count(); ++k) {
    const auto& prev = mesh.nodes[k - 1];
    const auto& cur = mesh.nodes[k];
    CHECK((cur[1] > prev[1] || (cur[1] == prev[1] && cur[0] > prev[0])));
  }
}

TEST_CASE("coarse/fine pair element counts match the experiment setup") {
  {
    const auto [coarse, fine] = coarse_fine_pair(8);
    CHECK(coarse.element_count() == 128);
    CHECK(fine.element_count() == 2048);
  }
  {
    const auto [coarse, fine] = coarse_fine_pair(32);
    CHECK(coarse.element_count() == 2048);
    CHECK(fine.element_count() == 32768);
  }
  {
    const auto [coarse, fine] = coarse_fine_pair(16);
    CHECK(coarse.element_count() == 512);
  }
}

TEST_CASE("nested refinement: coarse areas equal the sum of contained fine areas") {
  const auto [coarse, fine] = coarse_fine_pair(3);
  std::vector<double> contained(coarse.element_count(), 0.0);
  std::vector<int> counts(coarse.element_count(), 0);
  for (int e = 0; e < fine.element_count(); ++e) {
    const int ce = containing_coarse_element(fine, coarse, e);
    contained[ce] += element_area(fine, e);
    counts[ce] += 1;
  }
  for (int ce = 0; ce < coarse.element_count(); ++ce) {
    CHECK(counts[ce] == 16);
    CHECK(contained[ce] == doctest::Approx(element_area(coarse, ce)).epsilon(1e-12));
  }
}

TEST_CASE("shape regularity: diameter over inradius is constant") {
  const auto mesh = build_structured_mesh(7);
  double ratio0 = -1.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    std::array<double, 3> side{};
    for (int i = 0; i < 3; ++i) {
      const auto& a = mesh.nodes[el[i]];
      const auto& b = mesh.nodes[el[(i + 1) % 3]];
      side[i] = std::hypot(a[0] - b[0], a[1] - b[1]);
    }
    const double diameter = *std::max_element(side.begin(), side.end());
    const double s = 0.5 * (side[0] + side[1] + side[2]);
    const double inradius = element_area(mesh, e) / s;
    const double ratio = diameter / inradius;
    if (ratio0 < 0.0) {
      ratio0 = ratio;
    }
    CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-12));
  }
}

TEST_CASE("invalid subdivision counts are rejected") {
  CHECK_THROWS_AS(build_structured_mesh(0), std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh(-3), std::invalid_argument);
}
