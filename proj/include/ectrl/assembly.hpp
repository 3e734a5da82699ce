#pragma once

#include "ectrl/mesh.hpp"
#include "ectrl/quadrature.hpp"
#include "ectrl/sparse.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

/// Stiffness matrix on the full node set, from exact per-element gradients
/// of the P1 basis. Throws AssemblyError on degenerate elements.
SparseSymMatrix assemble_stiffness(const Mesh& mesh);

/// Consistent mass matrix on the full node set, from the exact element
/// matrix (|tau| / 12) * [[2,1,1],[1,2,1],[1,1,2]].
SparseSymMatrix assemble_mass(const Mesh& mesh);

/// Load vector with entries approximating the moments of f against the
/// nodal basis, using the given quadrature rule.
NodalVector assemble_load(const Mesh& mesh, const ScalarField& f,
                          const QuadratureRule& quad);

/// Mixed mass matrix coupling fine nodal basis functions with coarse
/// piecewise constants: entry (j, l) is the exact integral of the fine hat
/// function j over coarse element l. Requires the nested pair produced by
/// coarse_fine_pair; throws std::invalid_argument otherwise.
RectSparseMatrix assemble_mixed_mass(const Mesh& fine, const Mesh& coarse);

/// Rows and columns at boundary nodes removed; ordering follows
/// interior_indices.
SparseSymMatrix restrict_interior(const SparseSymMatrix& a, const Mesh& mesh);
NodalVector restrict_interior(const NodalVector& v, const Mesh& mesh);

/// Rows at boundary nodes removed from a fine-node-indexed matrix.
RectSparseMatrix restrict_rows_interior(const RectSparseMatrix& a, const Mesh& mesh);

/// Interior-indexed vector padded with zeros at boundary nodes.
NodalVector extend_by_zero(const NodalVector& interior, const Mesh& mesh);

/// Nodal samples of a scalar field at the interior nodes.
NodalVector sample_interior(const Mesh& mesh, const ScalarField& f);

} // namespace ectrl
