#ifndef PFORM_VERIFY_HPP
#define PFORM_VERIFY_HPP

#include <string>
#include <vector>

#include "pform/scenario.hpp"
#include "pform/tolerances.hpp"
#include "pform/wilson.hpp"

namespace pform {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    int failures() const;
};

std::string scenario_label(const Scenario& s);

/// Runs every module invariant on one scenario. Wilson-loop checks run on
/// 1-form scenarios; Aharonov-Bohm detection on torus meshes.
VerifyReport verify_scenario(const Scenario& scenario, const Tolerances& tol);

/// A horizontal (noncontractible) edge loop of a torus(n,m) mesh.
Chain torus_horizontal_loop(const WilsonCalculus& wilson, const Mesh& mesh, int m);
/// The boundary of the first triangle (a contractible loop).
Chain triangle_boundary_loop(const WilsonCalculus& wilson, const Mesh& mesh);
/// A fundamental cycle of the edge graph: one non-tree edge plus the tree
/// path closing it. Returns false when the graph is a tree.
bool fundamental_cycle(const Mesh& mesh, int skip, std::vector<std::pair<int, int>>& terms);

} // namespace pform

#endif
