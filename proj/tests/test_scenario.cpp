#include <doctest.h>

#include "pform/scenario.hpp"
#include "pform/verify.hpp"

using namespace pform;

TEST_CASE("scenario parsing") {
    Scenario s = parse_scenario(R"json({
        "mesh": "torus(4,4)",
        "n": 2,
        "p": 1,
        "phi": {"kind": "random", "scale": 0.3},
        "twist_coefficient": null,
        "seed": 99
    })json");
    CHECK(s.mesh.kind == "torus");
    CHECK(s.p == 1);
    CHECK(s.n == 2);
    CHECK(s.phi.kind == PhiSpec::Kind::Random);
    CHECK(!s.twist_coefficient.has_value());
    CHECK(s.seed == 99);

    Scenario structured = parse_scenario(R"json({
        "mesh": {"kind": "disc", "params": [3, 8], "profile": "hyperbolic-like"},
        "p": 1,
        "phi": 0.5
    })json");
    CHECK(structured.mesh.profile == WeightProfile::HyperbolicLike);
    CHECK(structured.phi.kind == PhiSpec::Kind::Constant);
    CHECK(structured.phi.value == 0.5);

    CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"json({"p": 1})json"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"json({"mesh": "torus(4,4)", "p": 1,
        "phi": {"kind": "mystery"}})json"),
                    ParseError);
}

TEST_CASE("system assembly honors scenario invariants") {
    Scenario s = parse_scenario(R"json({"mesh": "torus(4,4)", "n": 3, "p": 1})json");
    CHECK_THROWS_AS(build_system(s), InvalidParameterError);

    s = parse_scenario(R"json({"mesh": "torus(4,4)", "p": 5})json");
    CHECK_THROWS_AS(build_system(s), InvalidParameterError);

    s = parse_scenario(R"json({"mesh": "circle(4)", "p": 0,
        "phi": {"kind": "table", "values": [1, 2]}})json");
    CHECK_THROWS_AS(build_system(s), InvalidParameterError);

    // Radial phi uses the generator's radius metadata.
    s = parse_scenario(R"json({"mesh": "disc(2,6)", "p": 1,
        "phi": {"kind": "radial", "amplitude": 0.5}})json");
    System sys = build_system(s);
    CHECK(sys.mesh.metric.phi[0] == 0.0);
    CHECK(sys.mesh.metric.phi[1] == 0.5);
    CHECK(sys.mesh.metric.phi[1 + 6] == 1.0);
}

TEST_CASE("random draws are reproducible per seed") {
    Scenario s = parse_scenario(R"json({"mesh": "torus(4,4)", "p": 1,
        "phi": {"kind": "random", "scale": 0.2}, "seed": 5})json");
    System a = build_system(s);
    System b = build_system(s);
    CHECK((a.mesh.metric.phi - b.mesh.metric.phi).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng1(7), rng2(7);
    PhasePoint x = random_phase_point(a.dynamics, rng1);
    PhasePoint y = random_phase_point(b.dynamics, rng2);
    CHECK((x.A - y.A).cwiseAbs().maxCoeff() == 0.0);
    CHECK((x.E - y.E).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("builtin scenarios all assemble and pass sanity checks") {
    for (const Scenario& scenario : builtin_scenarios()) {
        CAPTURE(scenario_label(scenario));
        System sys = build_system(scenario);
        CHECK(sys.dynamics.cochain_count() > 0);
    }
}

TEST_CASE("formatting round trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
