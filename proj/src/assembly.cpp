#include "ectrl/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ectrl {

namespace {

struct ElementGeometry {
  std::array<double, 3> bx; // gradient coefficients: grad phi_i = (bx_i, by_i) / (2A)
  std::array<double, 3> by;
  double area;
};

ElementGeometry geometry(const Mesh& mesh, int e) {
  const auto& el = mesh.elements[e];
  const auto& p0 = mesh.nodes[el[0]];
  const auto& p1 = mesh.nodes[el[1]];
  const auto& p2 = mesh.nodes[el[2]];

  ElementGeometry g;
  g.bx = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
  g.by = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
  g.area = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
  if (!(g.area > 1e-14)) {
    throw AssemblyError("assembly: degenerate element");
  }
  return g;
}

} // namespace

SparseSymMatrix assemble_stiffness(const Mesh& mesh) {
  TripletBuilder builder(mesh.node_count(), mesh.node_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto g = geometry(mesh, e);
    const auto& el = mesh.elements[e];
    const double s = 1.0 / (4.0 * g.area);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        builder.add(el[i], el[j], s * (g.bx[i] * g.bx[j] + g.by[i] * g.by[j]));
      }
    }
  }
  return builder.build_symmetric();
}

SparseSymMatrix assemble_mass(const Mesh& mesh) {
  TripletBuilder builder(mesh.node_count(), mesh.node_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto g = geometry(mesh, e);
    const auto& el = mesh.elements[e];
    const double s = g.area / 12.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        builder.add(el[i], el[j], s * (i == j ? 2.0 : 1.0));
      }
    }
  }
  return builder.build_symmetric();
}

NodalVector assemble_load(const Mesh& mesh, const ScalarField& f,
                          const QuadratureRule& quad) {
  NodalVector load(mesh.node_count(), 0.0);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.nodes[el[0]];
    const auto& p1 = mesh.nodes[el[1]];
    const auto& p2 = mesh.nodes[el[2]];
    const double area = element_area(mesh, e);
    if (!(area > 1e-14)) {
      throw AssemblyError("assemble_load: degenerate element");
    }
    for (int q = 0; q < quad.size(); ++q) {
      const auto& lam = quad.points[q];
      const double x = lam[0] * p0[0] + lam[1] * p1[0] + lam[2] * p2[0];
      const double y = lam[0] * p0[1] + lam[1] * p1[1] + lam[2] * p2[1];
      const double wf = quad.weights[q] * area * f(x, y);
      for (int i = 0; i < 3; ++i) {
        load[el[i]] += wf * lam[i];
      }
    }
  }
  return load;
}

RectSparseMatrix assemble_mixed_mass(const Mesh& fine, const Mesh& coarse) {
  if (fine.n_per_side != 4 * coarse.n_per_side) {
    throw std::invalid_argument("assemble_mixed_mass: meshes are not the nested h = H/4 pair");
  }
  TripletBuilder builder(fine.node_count(), coarse.element_count());
  for (int e = 0; e < fine.element_count(); ++e) {
    const int ce = containing_coarse_element(fine, coarse, e);
    const double contrib = element_area(fine, e) / 3.0;
    for (int v : fine.elements[e]) {
      builder.add(v, ce, contrib);
    }
  }
  return builder.build_rect();
}

SparseSymMatrix restrict_interior(const SparseSymMatrix& a, const Mesh& mesh) {
  const auto interior = interior_indices(mesh);
  std::vector<int> new_index(mesh.node_count(), -1);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    new_index[interior[k]] = static_cast<int>(k);
  }

  TripletBuilder builder(static_cast<int>(interior.size()), static_cast<int>(interior.size()));
  for (std::size_t r = 0; r < interior.size(); ++r) {
    const int i = interior[r];
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int j = new_index[a.cols[k]];
      if (j >= 0) {
        builder.add(static_cast<int>(r), j, a.vals[k]);
      }
    }
  }
  return builder.build_symmetric();
}

NodalVector restrict_interior(const NodalVector& v, const Mesh& mesh) {
  const auto interior = interior_indices(mesh);
  NodalVector out(interior.size());
  for (std::size_t k = 0; k < interior.size(); ++k) {
    out[k] = v[interior[k]];
  }
  return out;
}

RectSparseMatrix restrict_rows_interior(const RectSparseMatrix& a, const Mesh& mesh) {
  const auto interior = interior_indices(mesh);
  TripletBuilder builder(static_cast<int>(interior.size()), a.n_cols);
  for (std::size_t r = 0; r < interior.size(); ++r) {
    const int i = interior[r];
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      builder.add(static_cast<int>(r), a.cols[k], a.vals[k]);
    }
  }
  return builder.build_rect();
}

NodalVector extend_by_zero(const NodalVector& interior, const Mesh& mesh) {
  const auto idx = interior_indices(mesh);
  NodalVector out(mesh.node_count(), 0.0);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out[idx[k]] = interior[k];
  }
  return out;
}

NodalVector sample_interior(const Mesh& mesh, const ScalarField& f) {
  const auto idx = interior_indices(mesh);
  NodalVector out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out[k] = f(mesh.nodes[idx[k]][0], mesh.nodes[idx[k]][1]);
  }
  return out;
}

} // namespace ectrl
