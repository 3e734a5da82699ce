#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace ectrl {

/// Conforming triangulation of the unit square (0,1)^2.
///
/// Nodes are ordered lexicographically by (y, x); every grid cell is split
/// along the lower-left to upper-right diagonal, so each P1 stencil matches
/// the classic five-point pattern. Immutable after construction.
struct Mesh {
  int n_per_side = 0;
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> elements; // counter-clockwise
  std::vector<std::uint8_t> boundary_mask;  // 1 iff node lies on the boundary
  double h = 0.0;                           // maximal element diameter

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }
};

/// Uniform n-by-n grid, each cell split into two triangles.
/// Throws std::invalid_argument for n < 1.
Mesh build_structured_mesh(int n);

/// Ascending indices of all non-boundary nodes; their count is the
/// dimension of the homogeneous-Dirichlet P1 space.
std::vector<int> interior_indices(const Mesh& mesh);

/// (coarse, fine) pair with fine subdivision 4 * n_coarse, so every coarse
/// element is the exact union of 16 fine elements.
std::pair<Mesh, Mesh> coarse_fine_pair(int n_coarse);

/// Signed area of element e (positive for counter-clockwise vertices).
double element_area(const Mesh& mesh, int e);

/// Index of the coarse element containing the given fine element.
/// Requires fine.n_per_side to be a multiple of coarse.n_per_side;
/// throws std::invalid_argument otherwise.
int containing_coarse_element(const Mesh& fine, const Mesh& coarse, int fine_element);

} // namespace ectrl
