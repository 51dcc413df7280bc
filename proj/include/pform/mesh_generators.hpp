#ifndef PFORM_MESH_GENERATORS_HPP
#define PFORM_MESH_GENERATORS_HPP

#include <string>
#include <vector>

#include "pform/simplicial_complex.hpp"

namespace pform {

enum class WeightProfile { Flat, HyperbolicLike };

/// Cycle graph on n vertices (n >= 3).
Mesh make_circle(int n);

/// Path graph with n edges, n+1 vertices (n >= 1).
Mesh make_interval(int n);

/// Diagonal triangulation of the flat torus on an n x m vertex grid
/// (n, m >= 3): V = nm, E = 3nm, F = 2nm.
Mesh make_torus(int n, int m);

/// Octahedron sphere, each subdivision quadrisecting every triangle
/// (0 <= subdiv <= 6).
Mesh make_sphere_octahedron(int subdiv);

/// Triangulated disc: a center vertex plus `rings` concentric rings of
/// `sectors` vertices (rings >= 1, sectors >= 3). The hyperbolic-like
/// profile scales each dual volume by exp(growth * mean ring index).
Mesh make_disc(int rings, int sectors, WeightProfile profile = WeightProfile::Flat,
               double growth = 1.0);

/// Triangulated cylinder: n vertices around (n >= 3), m quad levels
/// (m >= 1). Profile weights grow along the axis.
Mesh make_cylinder(int n, int m, WeightProfile profile = WeightProfile::Flat,
                   double growth = 1.0);

/// Structured generator request, e.g. {kind="torus", params={4,4}}.
struct GeneratorSpec {
    std::string kind;
    std::vector<int> params;
    WeightProfile profile = WeightProfile::Flat;
    double growth = 1.0;
};

Mesh generate_mesh(const GeneratorSpec& spec);

/// Parses "torus(4,4)", "disc(3,8,hyperbolic-like)", ...
GeneratorSpec parse_generator_spec(const std::string& text);

} // namespace pform

#endif
