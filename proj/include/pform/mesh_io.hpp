#ifndef PFORM_MESH_IO_HPP
#define PFORM_MESH_IO_HPP

#include <string>

#include "pform/simplicial_complex.hpp"

namespace pform {

/// Serializes complex + metric to the structured-text mesh format with
/// fields `dimension`, `simplices`, `dual_volumes`, `phi` (and, when
/// present, `vertex_radius`). save(load(save(m))) is byte-identical.
std::string save_mesh(const Mesh& mesh);

Mesh load_mesh(const std::string& text);

void save_mesh_file(const Mesh& mesh, const std::string& path);
Mesh load_mesh_file(const std::string& path);

} // namespace pform

#endif
