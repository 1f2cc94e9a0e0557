// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Stationary parameter sweeps and qubit trajectories with plot-ready output.
 *
 * Grids are row-major: row index follows axis1, column index follows axis2.
 * Missing values (singular cells) are empty CSV cells and JSON nulls.
 */

#pragma once

#include <hqsim/config.hpp>
#include <hqsim/dynamics.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <random>
#include <thread>

namespace hqsim {

// ============================================================================
// Sweep specification
// ============================================================================

enum class Observable { eigenvalues_2x2, prob0_eig1, prob0_eig2, J1, J2, Jprime, exact_gap, sw_residual };

inline const std::array<std::pair<std::string_view, Observable>, 8>& observable_names() {
    static const std::array<std::pair<std::string_view, Observable>, 8> names{{
        {"eigenvalues_2x2", Observable::eigenvalues_2x2},
        {"prob0_eig1", Observable::prob0_eig1},
        {"prob0_eig2", Observable::prob0_eig2},
        {"J1", Observable::J1},
        {"J2", Observable::J2},
        {"Jprime", Observable::Jprime},
        {"exact_gap", Observable::exact_gap},
        {"sw_residual", Observable::sw_residual},
    }};
    return names;
}

inline Observable parse_observable(std::string_view name) {
    for (const auto& [n, o] : observable_names())
        if (n == name) return o;
    throw InputError("unknown observable '" + std::string(name) + "'");
}

inline std::string observable_name(Observable o) {
    for (const auto& [n, v] : observable_names())
        if (v == o) return std::string(n);
    return "?";
}

/// Output channels of an observable; eigenvalues_2x2 yields two.
inline std::vector<std::string> channel_names(Observable o) {
    if (o == Observable::eigenvalues_2x2) return {"eigenvalues_2x2.eig1", "eigenvalues_2x2.eig2"};
    return {observable_name(o)};
}

struct SweepAxis {
    std::string field;
    double min = 0, max = 0;
    int steps = 2;

    double value(int i) const { return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1); }
    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = value(i);
        return v;
    }
    bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
    DotParameters base;
    SweepAxis axis1{"t13", 0.3, 1.5, 50};
    SweepAxis axis2{"t23", 0.3, 1.5, 50};
    std::vector<Observable> observables{Observable::eigenvalues_2x2, Observable::prob0_eig1, Observable::prob0_eig2,
                                        Observable::J1, Observable::J2, Observable::Jprime};
    SuperexchangeNormalization normalization = SuperexchangeNormalization::conventional;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
};

inline void validate_axis(const SweepAxis& a, const char* which) {
    if (!find_dot_parameter(a.field))
        throw InputError(std::string(which) + ": unknown parameter field '" + a.field + "'");
    if (a.steps < 2) throw InputError(std::string(which) + ": steps must be >= 2");
    if (!(a.min < a.max)) throw InputError(std::string(which) + ": min must be < max");
}

inline void validate_spec(const SweepSpec& s) {
    validate_axis(s.axis1, "axis1");
    validate_axis(s.axis2, "axis2");
    if (s.axis1.field == s.axis2.field) throw InputError("axis1 and axis2 sweep the same field");
    if (s.observables.empty()) throw InputError("no observables requested");
}

inline json to_json(const SweepAxis& a) {
    return json{{"field", a.field}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}};
}

inline SweepAxis parse_axis(const json& j, const char* which) {
    if (!j.is_object()) throw InputError(std::string(which) + " must be an object");
    SweepAxis a;
    for (const auto& [key, value] : j.items()) {
        if (key == "field" && value.is_string()) a.field = value.get<std::string>();
        else if (key == "min" && value.is_number()) a.min = value.get<double>();
        else if (key == "max" && value.is_number()) a.max = value.get<double>();
        else if (key == "steps" && value.is_number_integer()) a.steps = value.get<int>();
        else throw InputError(std::string(which) + ": bad or unknown key '" + key + "'");
    }
    return a;
}

/// Sweep document: {"axis1": {...}, "axis2": {...}, "observables": [...], "normalization": "conventional"|"projector"}.
inline SweepSpec parse_sweep_spec(const json& doc, const DotParameters& base) {
    if (!doc.is_object()) throw InputError("sweep spec must be a JSON object");
    SweepSpec s;
    s.base = base;
    for (const auto& [key, value] : doc.items()) {
        if (key == "axis1") s.axis1 = parse_axis(value, "axis1");
        else if (key == "axis2") s.axis2 = parse_axis(value, "axis2");
        else if (key == "observables") {
            if (!value.is_array()) throw InputError("observables must be an array of names");
            s.observables.clear();
            for (const auto& o : value) {
                if (!o.is_string()) throw InputError("observable names must be strings");
                s.observables.push_back(parse_observable(o.get<std::string>()));
            }
        } else if (key == "normalization") {
            const auto n = value.is_string() ? value.get<std::string>() : std::string{};
            if (n == "conventional") s.normalization = SuperexchangeNormalization::conventional;
            else if (n == "projector") s.normalization = SuperexchangeNormalization::projector;
            else throw InputError("normalization must be \"conventional\" or \"projector\"");
        } else {
            throw InputError("unknown sweep spec key '" + key + "'");
        }
    }
    validate_spec(s);
    return s;
}

inline json to_json(const SweepSpec& s) {
    json obs = json::array();
    for (auto o : s.observables) obs.push_back(observable_name(o));
    return json{{"axis1", to_json(s.axis1)},
                {"axis2", to_json(s.axis2)},
                {"observables", obs},
                {"normalization", s.normalization == SuperexchangeNormalization::conventional ? "conventional" : "projector"}};
}

// ============================================================================
// Sweep result
// ============================================================================

struct Grid {
    std::string name;
    int rows = 0, cols = 0;
    std::vector<std::optional<double>> data;  ///< row-major

    std::optional<double> at(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
    bool operator==(const Grid&) const = default;
};

struct SweepResult {
    SweepAxis axis1, axis2;
    std::vector<Grid> grids;
    json provenance;

    const Grid& grid(std::string_view name) const {
        for (const auto& g : grids)
            if (g.name == name) return g;
        throw InputError("sweep result has no observable '" + std::string(name) + "'");
    }
    bool operator==(const SweepResult&) const = default;
};

namespace detail {

/// Levels with S = 1/2, Sz = −1/2 of the exact N = 3 spectrum; gap of the lowest two.
class ExactGapEvaluator {
public:
    ExactGapEvaluator() : basis_(build_basis(3)), spin_(spin_operators(basis_)) {}

    std::optional<double> operator()(const DotParameters& p) const {
        const auto h = build_hubbard(p, basis_);
        const auto es = tagged_eigensystem(h.matrix, spin_.s2.matrix, spin_.sz.matrix);
        std::vector<double> levels;
        for (Eigen::Index i = 0; i < es.values.size(); ++i)
            if (es.spin[static_cast<std::size_t>(i)] == 0.5 && es.sz[static_cast<std::size_t>(i)].twice == -1)
                levels.push_back(es.values(i));
        if (levels.size() < 2) return std::nullopt;
        std::sort(levels.begin(), levels.end());
        return levels[1] - levels[0];
    }

private:
    FockBasis basis_;
    SpinOperators spin_;
};

struct CellValues {
    std::vector<std::optional<double>> channels;
};

inline CellValues evaluate_cell(const DotParameters& p, const SweepSpec& spec, const ExactGapEvaluator& gap) {
    CellValues out;
    std::optional<EffectiveCouplings> c;
    try {
        c = effective_couplings(p, spec.normalization);
    } catch (const NumericalError&) {
    }

    std::optional<Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>> es2;
    if (c) es2.emplace(project_to_logical(*c).matrix);
    const auto lb_prob0 = [&](int col) -> std::optional<double> {
        if (!es2) return std::nullopt;
        return std::clamp(std::norm(es2->eigenvectors()(0, col)), 0.0, 1.0);
    };

    for (auto o : spec.observables) {
        switch (o) {
        case Observable::eigenvalues_2x2:
            out.channels.push_back(es2 ? std::optional(es2->eigenvalues()(0)) : std::nullopt);
            out.channels.push_back(es2 ? std::optional(es2->eigenvalues()(1)) : std::nullopt);
            break;
        case Observable::prob0_eig1: out.channels.push_back(lb_prob0(0)); break;
        case Observable::prob0_eig2: out.channels.push_back(lb_prob0(1)); break;
        case Observable::J1: out.channels.push_back(c ? std::optional(c->J1) : std::nullopt); break;
        case Observable::J2: out.channels.push_back(c ? std::optional(c->J2) : std::nullopt); break;
        case Observable::Jprime: out.channels.push_back(c ? std::optional(c->Jprime) : std::nullopt); break;
        case Observable::exact_gap:
            try {
                out.channels.push_back(gap(p));
            } catch (const Error&) {
                out.channels.push_back(std::nullopt);
            }
            break;
        case Observable::sw_residual:
            try {
                out.channels.push_back(c ? std::optional(sw_spectral_deviation(p, spec.normalization)) : std::nullopt);
            } catch (const Error&) {
                out.channels.push_back(std::nullopt);
            }
            break;
        }
    }
    return out;
}

} // namespace detail

/**
 * Evaluates every grid point concurrently; results land in grid order
 * regardless of completion order. Singular cells become missing values.
 */
inline SweepResult run_sweep(const SweepSpec& spec, const json& provenance = json::object()) {
    validate_spec(spec);
    const auto f1 = *find_dot_parameter(spec.axis1.field);
    const auto f2 = *find_dot_parameter(spec.axis2.field);
    const int rows = spec.axis1.steps, cols = spec.axis2.steps;
    const std::size_t ncell = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

    std::vector<std::string> names;
    for (auto o : spec.observables)
        for (auto& n : channel_names(o)) names.push_back(n);

    const detail::ExactGapEvaluator gap;
    std::vector<detail::CellValues> cells(ncell);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < ncell; idx = next++) {
            DotParameters p = spec.base;
            p.*f1 = spec.axis1.value(static_cast<int>(idx) / cols);
            p.*f2 = spec.axis2.value(static_cast<int>(idx) % cols);
            cells[idx] = detail::evaluate_cell(p, spec, gap);
        }
    };
    unsigned nthreads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, ncell));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
    }

    SweepResult r;
    r.axis1 = spec.axis1;
    r.axis2 = spec.axis2;
    for (std::size_t ch = 0; ch < names.size(); ++ch) {
        Grid g{names[ch], rows, cols, std::vector<std::optional<double>>(ncell)};
        for (std::size_t i = 0; i < ncell; ++i) g.data[i] = cells[i].channels[ch];
        r.grids.push_back(std::move(g));
    }
    r.provenance = provenance;
    return r;
}

/// Standard provenance block: inputs, version, timestamp.
inline json make_provenance(const RunConfig& cfg, const json& extra, const std::string& timestamp) {
    json p{{"config", to_json(cfg)}, {"version", version}, {"timestamp", timestamp}};
    for (const auto& [k, v] : extra.items()) p[k] = v;
    return p;
}

inline std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ============================================================================
// Serialization
// ============================================================================

inline json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const SweepResult& r) {
    json obs = json::object();
    for (const auto& g : r.grids) {
        json rows = json::array();
        for (int i = 0; i < g.rows; ++i) {
            json row = json::array();
            for (int j = 0; j < g.cols; ++j) row.push_back(optional_to_json(g.at(i, j)));
            rows.push_back(std::move(row));
        }
        obs[g.name] = std::move(rows);
    }
    json names = json::array();
    for (const auto& g : r.grids) names.push_back(g.name);
    return json{{"axis1", to_json(r.axis1)},
                {"axis2", to_json(r.axis2)},
                {"axis1_values", r.axis1.values()},
                {"axis2_values", r.axis2.values()},
                {"observable_order", names},
                {"observables", obs},
                {"provenance", r.provenance}};
}

inline SweepResult sweep_result_from_json(const json& j) {
    try {
        SweepResult r;
        r.axis1 = parse_axis(j.at("axis1"), "axis1");
        r.axis2 = parse_axis(j.at("axis2"), "axis2");
        r.provenance = j.value("provenance", json::object());
        for (const auto& name : j.at("observable_order")) {
            const auto& rows = j.at("observables").at(name.get<std::string>());
            Grid g{name.get<std::string>(), r.axis1.steps, r.axis2.steps, {}};
            if (static_cast<int>(rows.size()) != g.rows) throw InputError("grid row count mismatch");
            for (const auto& row : rows) {
                if (static_cast<int>(row.size()) != g.cols) throw InputError("grid column count mismatch");
                for (const auto& v : row) g.data.push_back(v.is_null() ? std::nullopt : std::optional(v.get<double>()));
            }
            r.grids.push_back(std::move(g));
        }
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed sweep bundle: ") + e.what());
    }
}

/// One observable as CSV: "<axis1>,<axis2>,<name>" then one row per grid point.
inline std::string grid_to_csv(const SweepResult& r, const Grid& g) {
    std::string out = r.axis1.field + "," + r.axis2.field + "," + g.name + "\n";
    for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
            out += format_double(r.axis1.value(i)) + "," + format_double(r.axis2.value(j)) + ",";
            if (auto v = g.at(i, j)) out += format_double(*v);
            out += "\n";
        }
    }
    return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

/// <dir>/<observable>.csv for each channel plus <dir>/sweep.json.
inline void write_sweep(const SweepResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& g : r.grids) write_text_file(dir / (g.name + ".csv"), grid_to_csv(r, g));
    write_text_file(dir / "sweep.json", to_json(r).dump(2) + "\n");
}

// ============================================================================
// Trajectories
// ============================================================================

struct TrajectoryRow {
    double t_ps = 0;
    QubitState state;
    BlochPoint bloch;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    /// max amplitude gap between the closed form and the eigendecomposition
    /// propagator at randomly drawn check times
    double oracle_deviation = 0;
    json provenance;
};

struct DynamicsSettings {
    double t_max_ps = 100.0;
    int samples = 201;
    std::uint64_t seed = 0;
    QubitState initial = QubitState::zero();
    int oracle_checks = 10;
};

inline Trajectory run_dynamics(const RunConfig& cfg, const DynamicsSettings& s, const json& provenance = json::object()) {
    if (s.samples < 2) throw InputError("samples must be >= 2");
    if (!(s.t_max_ps > 0.0)) throw InputError("tmax must be > 0");
    const auto c = cfg.couplings();
    const auto h = project_to_logical(c);

    Trajectory tr;
    tr.rows.reserve(static_cast<std::size_t>(s.samples));
    for (int i = 0; i < s.samples; ++i) {
        const double t = s.t_max_ps * static_cast<double>(i) / static_cast<double>(s.samples - 1);
        const auto q = evolve_closed_form(h, s.initial, t);
        tr.rows.push_back({t, q, bloch_coordinates(q)});
    }

    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> pick(0.0, s.t_max_ps);
    for (int k = 0; k < s.oracle_checks; ++k) {
        const double t = pick(rng);
        const auto a = evolve_closed_form(h, s.initial, t);
        const auto b = evolve_numeric(h, s.initial, t);
        tr.oracle_deviation = std::max({tr.oracle_deviation, std::abs(a.a - b.a), std::abs(a.b - b.b)});
    }

    tr.provenance = provenance;
    tr.provenance["couplings"] = json{{"J1", c.J1}, {"J2", c.J2}, {"Jprime", c.Jprime}};
    tr.provenance["tmax_ps"] = s.t_max_ps;
    tr.provenance["samples"] = s.samples;
    tr.provenance["seed"] = s.seed;
    tr.provenance["oracle_checks"] = s.oracle_checks;
    tr.provenance["oracle_deviation"] = tr.oracle_deviation;
    return tr;
}

/// CSV with provenance as leading "# key: value" lines.
inline std::string trajectory_to_csv(const Trajectory& tr) {
    std::string out;
    for (const auto& [k, v] : tr.provenance.items()) out += "# " + k + ": " + v.dump() + "\n";
    out += "t_ps,re_a,im_a,re_b,im_b,prob1,x,y,z,norm\n";
    for (const auto& r : tr.rows) {
        const double p1 = std::norm(r.state.b);
        for (double v : {r.t_ps, r.state.a.real(), r.state.a.imag(), r.state.b.real(), r.state.b.imag(), p1, r.bloch.x,
                         r.bloch.y, r.bloch.z})
            out += format_double(v) + ",";
        out += format_double(r.state.norm_squared()) + "\n";
    }
    return out;
}

} // namespace hqsim
