#include "ectrl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ectrl {

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "level,n,h,rho,dofs,err_l2,err_h1,eoc_l2,eoc_h1,newton_iters,wall_ms\n";
  for (const auto& r : table.rows) {
    os << r.level << ',' << r.n << ',' << format_double(r.h) << ',' << format_double(r.rho)
       << ',' << r.dofs << ',' << format_double(r.err_l2) << ',' << format_double(r.err_h1)
       << ',' << format_double(r.eoc_l2) << ',' << format_double(r.eoc_h1) << ','
       << r.newton_iters << ',' << format_double(r.wall_ms) << '\n';
  }
}

namespace {

std::ofstream open_file(const std::string& path) {
  std::ofstream os(path, std::ios::binary); // binary keeps LF endings everywhere
  if (!os) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  return os;
}

void write_vtk_header(std::ostream& os, const Mesh& mesh, const std::string& title) {
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.node_count() << " double\n";
  for (const auto& p : mesh.nodes) {
    os << format_double(p[0]) << ' ' << format_double(p[1]) << " 0\n";
  }
  os << "CELLS " << mesh.element_count() << ' ' << 4 * mesh.element_count() << '\n';
  for (const auto& el : mesh.elements) {
    os << "3 " << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  }
  os << "CELL_TYPES " << mesh.element_count() << '\n';
  for (int e = 0; e < mesh.element_count(); ++e) {
    os << "5\n";
  }
}

} // namespace

void write_vtk_point_scalar(std::ostream& os, const Mesh& mesh, const NodalVector& values,
                            const std::string& field_name, const std::string& title) {
  if (static_cast<int>(values.size()) != mesh.node_count()) {
    throw std::invalid_argument("write_vtk_point_scalar: value count does not match mesh");
  }
  write_vtk_header(os, mesh, title);
  os << "POINT_DATA " << mesh.node_count() << '\n';
  os << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) {
    os << format_double(v) << '\n';
  }
}

void write_vtk_cell_scalar(std::ostream& os, const Mesh& mesh, const ElementVector& values,
                           const std::string& field_name, const std::string& title) {
  if (static_cast<int>(values.size()) != mesh.element_count()) {
    throw std::invalid_argument("write_vtk_cell_scalar: value count does not match mesh");
  }
  write_vtk_header(os, mesh, title);
  os << "CELL_DATA " << mesh.element_count() << '\n';
  os << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) {
    os << format_double(v) << '\n';
  }
}

void write_csv_file(const std::string& path, const ConvergenceTable& table) {
  auto os = open_file(path);
  write_csv(os, table);
}

void write_vtk_point_scalar_file(const std::string& path, const Mesh& mesh,
                                 const NodalVector& values, const std::string& field_name,
                                 const std::string& title) {
  auto os = open_file(path);
  write_vtk_point_scalar(os, mesh, values, field_name, title);
}

void write_vtk_cell_scalar_file(const std::string& path, const Mesh& mesh,
                                const ElementVector& values, const std::string& field_name,
                                const std::string& title) {
  auto os = open_file(path);
  write_vtk_cell_scalar(os, mesh, values, field_name, title);
}

} // namespace ectrl
