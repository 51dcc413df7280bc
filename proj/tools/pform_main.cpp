// Command-line front end: scenario-driven mesh generation, spectra,
// Kodaira reports, classical evolution, coherent-state matrix elements,
// Wilson loops, the invariant suite, and the spectral-gap study.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pform/mesh_io.hpp"
#include "pform/verify.hpp"

namespace {

using namespace pform;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitNumerical = 4;

struct Options {
    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    double tolerance_scale = 1.0;
    int degree = -1; // -1 means the scenario's p
};

Scenario load_or_default(const Options& opt) {
    Scenario s;
    if (!opt.scenario_path.empty()) {
        s = load_scenario_file(opt.scenario_path);
    } else {
        s.mesh = parse_generator_spec("torus(4,4)");
        s.p = 1;
    }
    if (opt.seed) s.seed = *opt.seed;
    return s;
}

void write_text(const Options& opt, const std::string& filename, const std::string& text) {
    if (opt.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(opt.out_dir);
    std::filesystem::path path = std::filesystem::path(opt.out_dir) / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    std::cerr << "wrote " << path.string() << "\n";
}

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

// Builds a phase point from a label spec, normalized to the oscillating
// sector for quantization use.
PhasePoint label_from_json(const json& spec, const Dynamics& dyn, std::mt19937_64& rng) {
    const int count = dyn.cochain_count();
    PhasePoint raw;
    if (spec.is_string() && spec.get<std::string>() == "random") {
        raw = {random_cochain(count, rng), random_cochain(count, rng)};
    } else if (spec.contains("kind") && spec["kind"] == "random") {
        raw = {random_cochain(count, rng), random_cochain(count, rng)};
    } else if (spec.contains("kind") && spec["kind"] == "mode") {
        int index = spec.at("index").get<int>();
        if (index < 0 || index >= dyn.spectral().size()) {
            throw InvalidParameterError("label: mode index out of range");
        }
        double amp_a = spec.value("amplitude_A", 1.0);
        double amp_e = spec.value("amplitude_E", 0.0);
        raw = {amp_a * dyn.spectral().eigenvectors.col(index),
               amp_e * dyn.spectral().eigenvectors.col(index)};
    } else {
        auto a = spec.at("A").get<std::vector<double>>();
        auto e = spec.at("E").get<std::vector<double>>();
        if (static_cast<int>(a.size()) != count || static_cast<int>(e.size()) != count) {
            throw InvalidParameterError("label: A and E must have one entry per p-simplex");
        }
        raw = {Eigen::Map<const Eigen::VectorXd>(a.data(), count),
               Eigen::Map<const Eigen::VectorXd>(e.data(), count)};
    }
    PhasePoint canonical = dyn.make_phase_point(raw.A, raw.E);
    return dyn.split_sectors(canonical).oscillating;
}

int cmd_mesh(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    write_text(opt, "mesh.json", save_mesh(system.mesh));
    return kExitOk;
}

int cmd_spectrum(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    int k = opt.degree >= 0 ? opt.degree : scenario.p;
    SpectralData s = spectral_decomposition(system.dynamics.bundle().laplacian(k),
                                            system.dynamics.bundle().mass(k));
    std::ostringstream out;
    for (int i = 0; i < s.size(); ++i) out << format_double(s.eigenvalues[i]) << "\n";
    write_text(opt, "spectrum.csv", out.str());
    return kExitOk;
}

int cmd_kodaira(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    int k = opt.degree >= 0 ? opt.degree : scenario.p;
    SpectralData s = spectral_decomposition(system.dynamics.bundle().laplacian(k),
                                            system.dynamics.bundle().mass(k));
    KodairaSplit split = kodaira_split(system.dynamics.bundle(), k, s);

    json report;
    report["degree"] = k;
    report["dims"] = {{"exact", split.dim_exact},
                      {"harmonic", split.dim_harmonic},
                      {"coexact", split.dim_coexact}};
    report["betti"] = betti(system.mesh.complex, k);
    double ratio = split.smallest_nonkernel_eigenvalue /
                   std::max(split.largest_kernel_eigenvalue, 1e-300);
    report["margins"] = {{"largest_kernel_eigenvalue", split.largest_kernel_eigenvalue},
                         {"smallest_nonkernel_eigenvalue", split.smallest_nonkernel_eigenvalue},
                         {"ratio", ratio}};
    if (!split.warning.empty()) report["warning"] = split.warning;
    write_text(opt, "kodaira.json", report.dump(2) + "\n");
    return kExitOk;
}

int cmd_evolve(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    const Dynamics& dyn = system.dynamics;

    double t_min = -10.0, t_max = 10.0;
    int steps = 81;
    if (scenario.extra.contains("evolve")) {
        const json& section = scenario.extra["evolve"];
        t_min = section.value("t_min", t_min);
        t_max = section.value("t_max", t_max);
        steps = section.value("steps", steps);
    }
    if (steps < 2) throw InvalidParameterError("evolve: steps must be at least 2");

    std::mt19937_64 rng(scenario.seed);
    PhasePoint x = random_phase_point(dyn, rng);
    PhasePoint y = random_phase_point(dyn, rng);

    std::ostringstream out;
    out << "# seed=" << scenario.seed << "\n";
    out << "t,hamiltonian,symplectic,oscillating_norm,free_norm\n";
    for (int i = 0; i < steps; ++i) {
        double t = t_min + (t_max - t_min) * i / (steps - 1);
        PhasePoint xt = dyn.evolve(x, t);
        PhasePoint yt = dyn.evolve(y, t);
        SectorSplit sectors = dyn.split_sectors(xt);
        double osc_norm = std::sqrt(dyn.inner(sectors.oscillating.A, sectors.oscillating.A) +
                                    dyn.inner(sectors.oscillating.E, sectors.oscillating.E));
        double free_norm = std::sqrt(dyn.inner(sectors.free.A, sectors.free.A) +
                                     dyn.inner(sectors.free.E, sectors.free.E));
        out << format_double(t) << "," << format_double(dyn.hamiltonian(xt)) << ","
            << format_double(dyn.symplectic(xt, yt)) << "," << format_double(osc_norm) << ","
            << format_double(free_norm) << "\n";
    }
    write_text(opt, "evolve.csv", out.str());
    return kExitOk;
}

int cmd_quantize(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    const Dynamics& dyn = system.dynamics;
    FockQuantization fock(dyn);

    std::mt19937_64 rng(scenario.seed);
    std::vector<PhasePoint> labels;
    std::vector<PhasePoint> observables;
    std::vector<int> wick_orders = {0, 1, 2, 3};
    if (scenario.extra.contains("quantize")) {
        const json& section = scenario.extra["quantize"];
        for (const json& spec : section.value("labels", json::array())) {
            labels.push_back(label_from_json(spec, dyn, rng));
        }
        for (const json& spec : section.value("observables", json::array())) {
            observables.push_back(label_from_json(spec, dyn, rng));
        }
        if (section.contains("wick_orders")) {
            wick_orders = section["wick_orders"].get<std::vector<int>>();
        }
    }
    while (labels.size() < 2) {
        labels.push_back(label_from_json("random", dyn, rng));
    }
    if (observables.empty()) {
        observables.push_back(label_from_json("random", dyn, rng));
    }

    json report;
    report["seed"] = scenario.seed;
    report["label_count"] = labels.size();

    json overlaps = json::array();
    for (size_t bra = 0; bra < labels.size(); ++bra) {
        for (size_t ket = 0; ket < labels.size(); ++ket) {
            overlaps.push_back({{"bra", bra},
                                {"ket", ket},
                                {"value", complex_to_json(fock.overlap({labels[ket]},
                                                                       {labels[bra]}))}});
        }
    }
    report["overlaps"] = overlaps;

    json elements = json::array();
    for (size_t k = 0; k < observables.size(); ++k) {
        Observable f = fock.make_observable(observables[k]);
        json entry;
        entry["observable"] = k;
        entry["mu"] = fock.characteristic(f);
        json per_pair = json::array();
        for (size_t bra = 0; bra < labels.size(); ++bra) {
            for (size_t ket = 0; ket < labels.size(); ++ket) {
                CoherentLabel lk{labels[ket]}, lb{labels[bra]};
                json item;
                item["bra"] = bra;
                item["ket"] = ket;
                item["weyl"] = complex_to_json(fock.weyl(f, lk, lb).raw);
                MatrixElement heis = fock.heisenberg(f, lk, lb);
                item["heisenberg"] = complex_to_json(heis.raw);
                item["heisenberg_ratio"] = complex_to_json(heis.ratio);
                item["normal_weyl"] = complex_to_json(fock.normal_weyl(f, lk, lb).raw);
                json wick;
                for (int order : wick_orders) {
                    wick[std::to_string(order)] =
                        complex_to_json(fock.wick_power(f, order, lk, lb).raw);
                }
                item["wick"] = wick;
                per_pair.push_back(item);
            }
        }
        entry["pairs"] = per_pair;
        elements.push_back(entry);
    }
    report["elements"] = elements;
    write_text(opt, "quantize.json", report.dump(2) + "\n");
    return kExitOk;
}

int cmd_wilson(const Options& opt) {
    Scenario scenario = load_or_default(opt);
    System system = build_system(scenario);
    const Dynamics& dyn = system.dynamics;
    FockQuantization fock(dyn);
    WilsonCalculus wilson(fock);

    std::vector<std::pair<int, int>> terms;
    double t = 0.0;
    double h = 1e-4;
    std::mt19937_64 rng(scenario.seed);
    PhasePoint x, x_bra;
    bool have_labels = false;
    if (scenario.extra.contains("wilson")) {
        const json& section = scenario.extra["wilson"];
        for (const json& pair : section.value("loop", json::array())) {
            terms.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
        }
        t = section.value("t", t);
        h = section.value("h", h);
        if (section.contains("labels")) {
            const json& specs = section["labels"];
            if (specs.size() != 2) throw InvalidParameterError("wilson: need exactly 2 labels");
            x = label_from_json(specs[0], dyn, rng);
            x_bra = label_from_json(specs[1], dyn, rng);
            have_labels = true;
        }
    }
    if (terms.empty()) {
        if (!fundamental_cycle(system.mesh, 0, terms)) {
            throw InvalidParameterError("wilson: mesh has no cycles and no loop was given");
        }
    }
    if (!have_labels) {
        x = label_from_json("random", dyn, rng);
        x_bra = label_from_json("random", dyn, rng);
    }
    Chain chain = wilson.make_chain(terms);

    PhasePoint xt = dyn.evolve_oscillating(x, t);
    PhasePoint bt = dyn.evolve_oscillating(x_bra, t);
    MatrixElement w = wilson.wilson(chain, xt, bt);
    MatrixElement hol = wilson.holonomy(chain, xt, bt);
    MaxwellResiduals residuals = wilson.verify_quantum_maxwell(x, x_bra, t, h);
    double corollary = wilson.verify_wilson_corollary(chain, x, x_bra, t, h);

    json report;
    report["seed"] = scenario.seed;
    report["t"] = t;
    report["h"] = h;
    report["wilson"] = complex_to_json(w.raw);
    report["wilson_ratio"] = complex_to_json(w.ratio);
    report["holonomy"] = complex_to_json(hol.raw);
    report["holonomy_ratio"] = complex_to_json(hol.ratio);
    report["maxwell_residuals"] =
        json::array({residuals.potential_equation, residuals.field_equation});
    report["corollary_residual"] = corollary;
    write_text(opt, "wilson.json", report.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    Tolerances tol = Tolerances{}.scaled(opt.tolerance_scale);
    std::vector<Scenario> scenarios;
    if (!opt.scenario_path.empty()) {
        Scenario s = load_scenario_file(opt.scenario_path);
        if (opt.seed) s.seed = *opt.seed;
        scenarios.push_back(std::move(s));
    } else {
        scenarios = builtin_scenarios();
        if (opt.seed) {
            for (Scenario& s : scenarios) s.seed = *opt.seed;
        }
    }

    int failures = 0;
    json all = json::array();
    for (const Scenario& scenario : scenarios) {
        VerifyReport report = verify_scenario(scenario, tol);
        for (const CheckResult& check : report.checks) {
            std::cout << (check.passed ? "PASS" : "FAIL") << "  " << check.name;
            if (check.note.rfind("skipped", 0) == 0) {
                std::cout << "  [" << check.note << "]";
            } else {
                std::cout << "  (measured " << format_double(check.measured) << " vs "
                          << format_double(check.tolerance) << ")";
                if (!check.note.empty()) std::cout << "  [" << check.note << "]";
            }
            std::cout << "\n";
            json entry = {{"name", check.name},
                          {"passed", check.passed},
                          {"measured", check.measured},
                          {"tolerance", check.tolerance}};
            if (!check.note.empty()) entry["note"] = check.note;
            all.push_back(entry);
        }
        failures += report.failures();
    }
    if (!opt.out_dir.empty()) {
        write_text(opt, "verify.json", all.dump(2) + "\n");
    }
    std::cout << (failures ? "FAILED" : "OK") << ": " << failures << " failing check(s)\n";
    return failures ? kExitInvariant : kExitOk;
}

int cmd_gap_study(const Options& opt) {
    const int sectors = 8;
    const std::vector<int> resolutions = {3, 5, 7};

    std::ostringstream out;
    out << "profile,rings,sectors,lambda1_L0,lambda1_L1\n";
    for (WeightProfile profile : {WeightProfile::Flat, WeightProfile::HyperbolicLike}) {
        for (int rings : resolutions) {
            Mesh mesh = make_disc(rings, sectors, profile);
            OperatorBundle bundle = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
            double gap[2];
            for (int k = 0; k <= 1; ++k) {
                SpectralData s = spectral_decomposition(bundle.laplacian(k), bundle.mass(k));
                gap[k] = s.smallest_nonkernel();
            }
            out << (profile == WeightProfile::Flat ? "flat" : "hyperbolic-like") << ","
                << rings << "," << sectors << "," << format_double(gap[0]) << ","
                << format_double(gap[1]) << "\n";
        }
    }
    write_text(opt, "gap_study.csv", out.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("PFORM_THREADS")) {
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));
    }

    CLI::App app{"Discrete p-form electromagnetism: twisted exterior calculus, Kodaira "
                 "decomposition, spectral dynamics and coherent-state quantization"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--scenario", opt.scenario_path, "Scenario file (JSON)");
    app.add_option("--out", opt.out_dir, "Output directory (default: stdout)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the scenario seed");
    app.add_option("--tolerance-scale", opt.tolerance_scale,
                   "Multiplies all default tolerances");

    auto* mesh = app.add_subcommand("mesh", "Generate a mesh and save it");
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of L_k as CSV");
    auto* kodaira = app.add_subcommand("kodaira", "Kodaira decomposition report");
    auto* evolve = app.add_subcommand("evolve", "Classical time evolution series");
    auto* quantize = app.add_subcommand("quantize", "Coherent-state matrix elements");
    auto* wilson = app.add_subcommand("wilson", "Wilson loop and quantum Maxwell report");
    auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
    auto* gap = app.add_subcommand("gap-study", "Spectral gap vs disc weight profile");

    for (CLI::App* sub : {spectrum, kodaira}) {
        sub->add_option("--degree", opt.degree, "Cochain degree (default: scenario's p)");
    }

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opt.seed = seed_value;

    try {
        if (app.got_subcommand(mesh)) return cmd_mesh(opt);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(opt);
        if (app.got_subcommand(kodaira)) return cmd_kodaira(opt);
        if (app.got_subcommand(evolve)) return cmd_evolve(opt);
        if (app.got_subcommand(quantize)) return cmd_quantize(opt);
        if (app.got_subcommand(wilson)) return cmd_wilson(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(gap)) return cmd_gap_study(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
