#ifndef PFORM_SCENARIO_HPP
#define PFORM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "pform/dynamics.hpp"
#include "pform/mesh_generators.hpp"

namespace pform {

struct PhiSpec {
    enum class Kind { Constant, Table, Radial, Random } kind = Kind::Constant;
    double value = 0.0;               // Constant
    std::vector<double> values;       // Table, per vertex
    double amplitude = 0.0;           // Radial: phi[v] = amplitude * radius[v]
    double scale = 0.0;               // Random: normal(0, scale) per vertex
};

/// One run configuration: which mesh, which theory (n, p, twist), which
/// potential, and the seed every random draw derives from.
struct Scenario {
    GeneratorSpec mesh;
    int p = 1;
    std::optional<int> n;                       // must equal mesh dimension when given
    PhiSpec phi;
    std::optional<double> twist_coefficient;    // default (n - 2p - 1) / 2
    std::uint64_t seed = 1;
    nlohmann::json extra;                       // subcommand sections (evolve, quantize, wilson)
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Mesh + assembled operators + dynamics for one scenario.
struct System {
    Mesh mesh;
    Dynamics dynamics;
};

System build_system(const Scenario& scenario);

/// Standard-normal cochain, projected to a canonical phase point.
PhasePoint random_phase_point(const Dynamics& dyn, std::mt19937_64& rng);
/// As above, then projected onto the oscillating sector.
PhasePoint random_oscillating_point(const Dynamics& dyn, std::mt19937_64& rng);
Eigen::VectorXd random_cochain(int size, std::mt19937_64& rng);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double value);

/// The built-in scenario set used by `verify` when no file is given.
std::vector<Scenario> builtin_scenarios();

} // namespace pform

#endif
