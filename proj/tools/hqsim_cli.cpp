// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// hqsim: command-line front end for the hybrid double-dot qubit simulator.
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure.

#include <hqsim/hqsim.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>

namespace {

using namespace hqsim;

int print_couplings(const std::string& config_path, bool as_json) {
    const auto cfg = load_config(config_path);
    const auto pub = effective_couplings(cfg.params, SuperexchangeNormalization::conventional);
    const auto proj = effective_couplings(cfg.params, SuperexchangeNormalization::projector);
    if (as_json) {
        json den = json::object();
        for (const auto& [occ, v] : pub.denominators) den["E" + occ.label() + "-E(111)"] = v;
        json out{{"J1", pub.J1},
                 {"J2", pub.J2},
                 {"Jprime", pub.Jprime},
                 {"projector", {{"J1", proj.J1}, {"J2", proj.J2}, {"Jprime", proj.Jprime}}},
                 {"denominators", den},
                 {"warnings", pub.warnings}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << std::setprecision(10);
    std::cout << "J1     = " << pub.J1 << " meV\n"
              << "J2     = " << pub.J2 << " meV\n"
              << "Jprime = " << pub.Jprime << " meV\n"
              << "projector normalization: J1 = " << proj.J1 << ", J2 = " << proj.J2 << ", Jprime = " << proj.Jprime
              << " meV\n"
              << "denominators E(ijk) - E(111) [meV]:\n";
    for (const auto& [occ, v] : pub.denominators) std::cout << "  " << occ.label() << "  " << v << "\n";
    for (const auto& w : pub.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

int print_spectrum(const std::string& config_path, bool as_json) {
    const auto cfg = load_config(config_path);
    const auto exact = exact_spectrum(build_hubbard(cfg.params));
    const auto c = cfg.couplings();
    const auto eff = numerical_spin_eigensystem(c);

    if (as_json) {
        auto levels = [](const Eigen::VectorXd& e, const std::vector<double>& s, const std::vector<HalfInt>& sz) {
            json arr = json::array();
            for (Eigen::Index i = 0; i < e.size(); ++i)
                arr.push_back({{"energy", e(i)}, {"S", s[static_cast<std::size_t>(i)]},
                               {"Sz", sz[static_cast<std::size_t>(i)].value()}});
            return arr;
        };
        json out{{"exact", levels(exact.eigenvalues, exact.spin, exact.sz)},
                 {"effective", levels(eff.values, eff.spin, eff.sz)},
                 {"couplings", {{"J1", c.J1}, {"J2", c.J2}, {"Jprime", c.Jprime}}}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << std::setprecision(10);
    std::cout << "exact Hubbard spectrum, N = 3 (" << exact.eigenvalues.size() << " levels) [meV]\n";
    for (Eigen::Index i = 0; i < exact.eigenvalues.size(); ++i)
        std::cout << "  " << std::setw(16) << exact.eigenvalues(i) << "  S=" << exact.spin[static_cast<std::size_t>(i)]
                  << "  Sz=" << to_string(exact.sz[static_cast<std::size_t>(i)]) << "\n";
    std::cout << "effective exchange spectrum (J1 = " << c.J1 << ", J2 = " << c.J2 << ", Jprime = " << c.Jprime
              << ") [meV]\n";
    for (Eigen::Index i = 0; i < eff.values.size(); ++i)
        std::cout << "  " << std::setw(16) << eff.values(i) << "  S=" << eff.spin[static_cast<std::size_t>(i)]
                  << "  Sz=" << to_string(eff.sz[static_cast<std::size_t>(i)]) << "\n";
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& spec_path, const std::string& out_dir,
             unsigned threads, const std::string& timestamp) {
    const auto cfg = load_config(config_path);
    auto spec = parse_sweep_spec(read_json_file(spec_path), cfg.params);
    spec.threads = threads;
    const auto prov = make_provenance(cfg, json{{"sweep", to_json(spec)}}, timestamp);
    const auto result = run_sweep(spec, prov);
    write_sweep(result, out_dir);
    std::cout << "wrote " << result.grids.size() << " observables on a " << spec.axis1.steps << "x" << spec.axis2.steps
              << " grid to " << out_dir << "\n";
    return 0;
}

int do_dynamics(const std::string& config_path, double tmax, int samples, std::uint64_t seed,
                const std::string& out_file, const std::string& timestamp) {
    const auto cfg = load_config(config_path);
    DynamicsSettings s;
    s.t_max_ps = tmax;
    s.samples = samples;
    s.seed = seed;
    const auto tr = run_dynamics(cfg, s, make_provenance(cfg, json::object(), timestamp));
    write_text_file(out_file, trajectory_to_csv(tr));
    std::cout << "wrote " << tr.rows.size() << " samples to " << out_file << " (closed form vs propagator deviation "
              << tr.oracle_deviation << ")\n";
    return 0;
}

int do_validate(const std::string& config_path, bool as_json) {
    const auto report = validate(load_config(config_path));
    if (as_json) std::cout << to_json(report).dump(2) << "\n";
    else std::cout << to_text(report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hqsim - three-electron double quantum dot (hybrid qubit) simulator"};
    app.require_subcommand(1);

    std::string config, spec, out;
    bool as_json = false;
    unsigned threads = 0;
    double tmax = 100.0;
    int samples = 201;
    std::uint64_t seed = 0;
    std::string timestamp = utc_timestamp_now();

    auto* couplings = app.add_subcommand("couplings", "Print J1, J2, J' and the configuration denominators");
    couplings->add_option("config", config, "Device config (JSON)")->required()->check(CLI::ExistingFile);
    couplings->add_flag("--json", as_json, "Machine-readable output");

    auto* spectrum = app.add_subcommand("spectrum", "Exact Hubbard and effective spectra tagged by (S, Sz)");
    spectrum->add_option("config", config, "Device config (JSON)")->required()->check(CLI::ExistingFile);
    spectrum->add_flag("--json", as_json, "Machine-readable output");

    auto* sweep = app.add_subcommand("sweep", "Stationary two-parameter sweep");
    sweep->add_option("config", config, "Device config (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("sweepspec", spec, "Sweep specification (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "Output directory")->required();
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep->add_option("--timestamp", timestamp, "Provenance timestamp (default: now, UTC)");

    auto* dynamics = app.add_subcommand("dynamics", "Logical-qubit trajectory from |0>");
    dynamics->add_option("config", config, "Device config (JSON)")->required()->check(CLI::ExistingFile);
    dynamics->add_option("--tmax", tmax, "Final time [ps]")->required();
    dynamics->add_option("--samples", samples, "Number of time samples (>= 2)")->required();
    dynamics->add_option("--out", out, "Output CSV file")->required();
    dynamics->add_option("--seed", seed, "Seed for the oracle check times");
    dynamics->add_option("--timestamp", timestamp, "Provenance timestamp (default: now, UTC)");

    auto* validate_cmd = app.add_subcommand("validate", "Hierarchy, Schrieffer-Wolff and consistency report");
    validate_cmd->add_option("config", config, "Device config (JSON)")->required()->check(CLI::ExistingFile);
    validate_cmd->add_flag("--json", as_json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (couplings->parsed()) return print_couplings(config, as_json);
        if (spectrum->parsed()) return print_spectrum(config, as_json);
        if (sweep->parsed()) return do_sweep(config, spec, out, threads, timestamp);
        if (dynamics->parsed()) return do_dynamics(config, tmax, samples, seed, out, timestamp);
        if (validate_cmd->parsed()) return do_validate(config, as_json);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
