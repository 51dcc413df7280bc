#include "pform/scenario.hpp"

#include <cstdio>
#include <fstream>

namespace pform {

using nlohmann::json;

namespace {

GeneratorSpec generator_from_json(const json& j) {
    if (j.is_string()) return parse_generator_spec(j.get<std::string>());
    GeneratorSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    spec.params = j.at("params").get<std::vector<int>>();
    if (j.contains("profile")) {
        std::string profile = j["profile"].get<std::string>();
        if (profile == "flat") {
            spec.profile = WeightProfile::Flat;
        } else if (profile == "hyperbolic-like") {
            spec.profile = WeightProfile::HyperbolicLike;
        } else {
            throw ParseError("scenario: unknown weight profile '" + profile + "'");
        }
    }
    if (j.contains("growth")) spec.growth = j["growth"].get<double>();
    return spec;
}

PhiSpec phi_from_json(const json& j) {
    PhiSpec phi;
    if (j.is_number()) {
        phi.kind = PhiSpec::Kind::Constant;
        phi.value = j.get<double>();
        return phi;
    }
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        phi.kind = PhiSpec::Kind::Constant;
        phi.value = j.at("value").get<double>();
    } else if (kind == "table") {
        phi.kind = PhiSpec::Kind::Table;
        phi.values = j.at("values").get<std::vector<double>>();
    } else if (kind == "radial") {
        phi.kind = PhiSpec::Kind::Radial;
        phi.amplitude = j.at("amplitude").get<double>();
    } else if (kind == "random") {
        phi.kind = PhiSpec::Kind::Random;
        phi.scale = j.at("scale").get<double>();
    } else {
        throw ParseError("scenario: unknown phi kind '" + kind + "'");
    }
    return phi;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    try {
        Scenario s;
        s.mesh = generator_from_json(doc.at("mesh"));
        s.p = doc.at("p").get<int>();
        if (doc.contains("n")) s.n = doc["n"].get<int>();
        if (doc.contains("phi")) s.phi = phi_from_json(doc["phi"]);
        if (doc.contains("twist_coefficient") && !doc["twist_coefficient"].is_null()) {
            s.twist_coefficient = doc["twist_coefficient"].get<double>();
        }
        if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
        s.extra = doc;
        return s;
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

System build_system(const Scenario& scenario) {
    Mesh mesh = generate_mesh(scenario.mesh);
    const int n = mesh.complex.dimension();
    if (scenario.n && *scenario.n != n) {
        throw InvalidParameterError("scenario: n=" + std::to_string(*scenario.n) +
                                    " does not match mesh dimension " + std::to_string(n));
    }
    if (scenario.p < 0 || scenario.p > n) {
        throw InvalidParameterError("scenario: p must satisfy 0 <= p <= n");
    }

    switch (scenario.phi.kind) {
        case PhiSpec::Kind::Constant:
            mesh.metric.phi.setConstant(scenario.phi.value);
            break;
        case PhiSpec::Kind::Table: {
            if (static_cast<int>(scenario.phi.values.size()) != mesh.complex.num_vertices()) {
                throw InvalidParameterError("scenario: phi table must list every vertex");
            }
            mesh.metric.phi = Eigen::Map<const Eigen::VectorXd>(
                scenario.phi.values.data(), static_cast<int>(scenario.phi.values.size()));
            break;
        }
        case PhiSpec::Kind::Radial: {
            for (int v = 0; v < mesh.complex.num_vertices(); ++v) {
                mesh.metric.phi[v] = scenario.phi.amplitude * mesh.vertex_radius[v];
            }
            break;
        }
        case PhiSpec::Kind::Random: {
            std::mt19937_64 rng(scenario.seed);
            std::normal_distribution<double> normal(0.0, scenario.phi.scale);
            for (int v = 0; v < mesh.complex.num_vertices(); ++v) {
                mesh.metric.phi[v] = normal(rng);
            }
            break;
        }
    }

    OperatorBundle bundle =
        OperatorBundle::assemble(mesh.complex, mesh.metric, scenario.p, scenario.twist_coefficient);
    return System{std::move(mesh), Dynamics(std::move(bundle))};
}

Eigen::VectorXd random_cochain(int size, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v[i] = normal(rng);
    return v;
}

PhasePoint random_phase_point(const Dynamics& dyn, std::mt19937_64& rng) {
    const int size = dyn.cochain_count();
    return dyn.make_phase_point(random_cochain(size, rng), random_cochain(size, rng));
}

PhasePoint random_oscillating_point(const Dynamics& dyn, std::mt19937_64& rng) {
    PhasePoint x = random_phase_point(dyn, rng);
    return dyn.split_sectors(x).oscillating;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> list;

    auto add = [&list](const std::string& mesh, int p, PhiSpec phi,
                       std::optional<double> coeff = std::nullopt) {
        Scenario s;
        s.mesh = parse_generator_spec(mesh);
        s.p = p;
        s.phi = phi;
        s.twist_coefficient = coeff;
        s.seed = 20210607; // fixed so verify output is reproducible
        list.push_back(std::move(s));
    };

    PhiSpec zero;
    PhiSpec random_small{PhiSpec::Kind::Random, 0.0, {}, 0.0, 0.3};
    PhiSpec radial{PhiSpec::Kind::Radial, 0.0, {}, 0.15, 0.0};

    add("circle(4)", 0, zero);
    add("circle(6)", 0, random_small);
    add("interval(5)", 0, radial);
    add("torus(4,4)", 1, zero);
    add("torus(4,4)", 1, random_small);
    add("torus(4,4)", 0, random_small);
    add("torus(4,4)", 2, random_small);
    add("torus(4,4)", 1, random_small, 0.0); // conformal coefficient override
    add("sphere_octahedron(0)", 1, zero);
    add("sphere_octahedron(1)", 1, random_small);
    add("disc(3,6,hyperbolic-like)", 1, zero);
    add("cylinder(4,3)", 1, radial);
    return list;
}

} // namespace pform
