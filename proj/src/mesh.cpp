#include "ectrl/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace ectrl {

Mesh build_structured_mesh(int n) {
  if (n < 1) {
    throw std::invalid_argument("build_structured_mesh: n must be >= 1");
  }

  Mesh m;
  m.n_per_side = n;
  const int np = n + 1;
  m.nodes.reserve(static_cast<std::size_t>(np) * np);
  m.boundary_mask.assign(static_cast<std::size_t>(np) * np, 0);

  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      m.nodes.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
      if (i == 0 || j == 0 || i == n || j == n) {
        m.boundary_mask[static_cast<std::size_t>(j) * np + i] = 1;
      }
    }
  }

  auto vid = [np](int i, int j) { return j * np + i; };

  m.elements.reserve(2u * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j);
      const int v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1);
      const int v11 = vid(i + 1, j + 1);
      m.elements.push_back({v00, v10, v11});
      m.elements.push_back({v00, v11, v01});
    }
  }

  m.h = std::sqrt(2.0) / n;
  return m;
}

std::vector<int> interior_indices(const Mesh& mesh) {
  std::vector<int> idx;
  idx.reserve(mesh.nodes.size());
  for (int k = 0; k < mesh.node_count(); ++k) {
    if (!mesh.boundary_mask[k]) {
      idx.push_back(k);
    }
  }
  return idx;
}

std::pair<Mesh, Mesh> coarse_fine_pair(int n_coarse) {
  return {build_structured_mesh(n_coarse), build_structured_mesh(4 * n_coarse)};
}

double element_area(const Mesh& mesh, int e) {
  const auto& el = mesh.elements[e];
  const auto& a = mesh.nodes[el[0]];
  const auto& b = mesh.nodes[el[1]];
  const auto& c = mesh.nodes[el[2]];
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

int containing_coarse_element(const Mesh& fine, const Mesh& coarse, int fine_element) {
  const int nc = coarse.n_per_side;
  if (fine.n_per_side % nc != 0) {
    throw std::invalid_argument("containing_coarse_element: meshes are not nested");
  }

  const auto& el = fine.elements[fine_element];
  double bx = 0.0;
  double by = 0.0;
  for (int v : el) {
    bx += fine.nodes[v][0];
    by += fine.nodes[v][1];
  }
  bx /= 3.0;
  by /= 3.0;

  int ci = static_cast<int>(bx * nc);
  int cj = static_cast<int>(by * nc);
  ci = std::min(ci, nc - 1);
  cj = std::min(cj, nc - 1);

  // Local cell coordinates decide the side of the lower-left/upper-right
  // diagonal; the barycenter is never on it for nested structured meshes.
  const double xi = bx * nc - ci;
  const double eta = by * nc - cj;
  const int tri = (eta < xi) ? 0 : 1;
  return 2 * (cj * nc + ci) + tri;
}

} // namespace ectrl
