#pragma once

#include <iosfwd>
#include <string>

#include "ectrl/analysis.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

/// Locale-independent formatting with 12 significant digits; NaN prints
/// as "nan".
std::string format_double(double v);

/// Convergence table as CSV: fixed header, LF line endings, 12 significant
/// digits, no locale.
void write_csv(std::ostream& os, const ConvergenceTable& table);
void write_csv_file(const std::string& path, const ConvergenceTable& table);

/// Legacy ASCII UNSTRUCTURED_GRID with one nodal scalar field.
void write_vtk_point_scalar(std::ostream& os, const Mesh& mesh, const NodalVector& values,
                            const std::string& field_name, const std::string& title);
void write_vtk_point_scalar_file(const std::string& path, const Mesh& mesh,
                                 const NodalVector& values, const std::string& field_name,
                                 const std::string& title);

/// Legacy ASCII UNSTRUCTURED_GRID with one per-element scalar field.
void write_vtk_cell_scalar(std::ostream& os, const Mesh& mesh, const ElementVector& values,
                           const std::string& field_name, const std::string& title);
void write_vtk_cell_scalar_file(const std::string& path, const Mesh& mesh,
                                const ElementVector& values, const std::string& field_name,
                                const std::string& title);

} // namespace ectrl
