// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file validate.hpp
 * @brief Consistency report for a device configuration.
 *
 * Reports never throw on physics problems; they record them.
 */

#pragma once

#include <hqsim/config.hpp>
#include <hqsim/dynamics.hpp>

#include <sstream>

namespace hqsim {

struct ValidationReport {
    HierarchyReport hierarchy;

    std::map<ConfigurationOccupancy, double> denominators;
    std::vector<std::string> warnings;
    std::optional<std::string> coupling_error;

    EffectiveCouplings couplings;            ///< conventional normalization
    EffectiveCouplings projector_couplings;  ///< single-configuration normalization

    /// Spectral distances, meV (traceless).
    double sw_deviation_conventional = 0;  ///< numerical SW vs conventional closed form
    double sw_deviation_projector = 0;  ///< numerical SW vs projector closed form (route consistency)
    /// Lowest eight exact Hubbard levels vs numerical SW levels, absolute energies.
    double sw_vs_exact = 0;
    double sw_fit_residual = 0;
    bool sw_breakdown = false;  ///< sw_vs_exact large compared with the exchange scale

    DoubletEnergies doublets_corrected{};
    DoubletEnergies doublets_legacy{};
    double doublet_residual_corrected = 0;
    double doublet_residual_legacy = 0;

    SwitchingAnalysis switching;
    double jprime_for_legacy_condition = 0;  ///< J' solving 3J' = √3(J1 − J2)
    double jprime_for_zero_detuning = 0;        ///< J' solving J' = (J1 + J2)/2
    bool switching_conditions_coincide = false;
    double max_transfer_at_legacy_condition = 0;
};

inline constexpr double sw_breakdown_ratio = 0.25;

namespace detail {

/// max over doublet levels of ‖H v − E v‖ with v the doublet eigenvectors.
inline double doublet_residual(const EffectiveCouplings& c, const AnalyticEigensystem& es, const DoubletEnergies& e) {
    const SpinMatrix h = heisenberg_matrix(c);
    double worst = 0.0;
    for (std::size_t n = 4; n < 8; ++n) {
        const double energy = n < 6 ? e.high : e.low;
        const auto& v = es.states[n].vector;
        worst = std::max(worst, (h * v - energy * v).norm());
    }
    return worst;
}

inline double max_transfer_with_jprime(EffectiveCouplings c, double jprime) {
    c.Jprime = jprime;
    return switching_time(c).max_transfer;
}

} // namespace detail

inline ValidationReport validate(const RunConfig& cfg) {
    ValidationReport r;
    const auto& p = cfg.params;
    r.hierarchy = check_hierarchy(p);
    for (const auto& w : r.hierarchy.warnings) r.warnings.push_back("hierarchy: " + w);

    try {
        r.couplings = effective_couplings(p, SuperexchangeNormalization::conventional);
        r.projector_couplings = effective_couplings(p, SuperexchangeNormalization::projector);
        r.denominators = r.couplings.denominators;
        for (const auto& w : r.couplings.warnings) r.warnings.push_back("denominator: " + w);

        const auto sw = numerical_sw(p);
        r.sw_deviation_conventional = traceless_spectral_distance(sw.matrix, heisenberg_matrix(r.couplings));
        r.sw_deviation_projector = traceless_spectral_distance(sw.matrix, heisenberg_matrix(r.projector_couplings));
        r.sw_fit_residual = extract_couplings_from_sw(sw).residual;

        const auto exact = hermitian_eigensystem(build_hubbard(p).matrix);
        const auto sw_levels = hermitian_eigensystem(sw.matrix).values;
        r.sw_vs_exact = (exact.values.head(spin_dim) - sw_levels).cwiseAbs().maxCoeff();
        const double width = sw_levels(spin_dim - 1) - sw_levels(0);
        r.sw_breakdown = r.sw_vs_exact > 1e-9 && r.sw_vs_exact > sw_breakdown_ratio * width;
        if (r.sw_breakdown)
            r.warnings.push_back("Schrieffer-Wolff: effective spectrum deviates from exact low-energy levels by " +
                                 std::to_string(r.sw_vs_exact) + " meV");
        if (r.sw_deviation_conventional > 1e-9)
            r.warnings.push_back("conventional coupling normalization differs from the projector result by " +
                                 std::to_string(r.sw_deviation_conventional) + " meV");
    } catch (const Error& e) {
        r.coupling_error = e.what();
        r.warnings.push_back(std::string("couplings: ") + e.what());
    }

    const auto c = cfg.couplings_override ? cfg.couplings() : r.couplings;
    if (cfg.couplings_override) r.couplings = c;
    if (!r.coupling_error || cfg.couplings_override) {
        const auto es = analytic_eigensystem(c);
        r.doublets_corrected = doublet_energies(c);
        r.doublets_legacy = legacy_doublet_energies(c);
        r.doublet_residual_corrected = detail::doublet_residual(c, es, r.doublets_corrected);
        r.doublet_residual_legacy = detail::doublet_residual(c, es, r.doublets_legacy);
        if (r.doublet_residual_legacy > 1e-10)
            r.warnings.push_back("legacy doublet energies are not eigenvalues here (residual " +
                                 std::to_string(r.doublet_residual_legacy) + ")");

        r.switching = switching_time(c);
        r.jprime_for_legacy_condition = (c.J1 - c.J2) / std::sqrt(3.0);
        r.jprime_for_zero_detuning = 0.5 * (c.J1 + c.J2);
        r.switching_conditions_coincide =
            std::abs(r.jprime_for_legacy_condition - r.jprime_for_zero_detuning) <=
            1e-12 * std::max({1.0, std::abs(c.J1), std::abs(c.J2)});
        r.max_transfer_at_legacy_condition = detail::max_transfer_with_jprime(c, r.jprime_for_legacy_condition);
        if (!r.switching_conditions_coincide)
            r.warnings.push_back("legacy resonance condition 3J' = sqrt(3)(J1 - J2) differs from zero detuning "
                                 "J' = (J1 + J2)/2; max transfer at the legacy condition is " +
                                 std::to_string(r.max_transfer_at_legacy_condition));
    }
    return r;
}

inline json to_json(const ValidationReport& r) {
    json den = json::object();
    for (const auto& [occ, v] : r.denominators) den["E" + occ.label() + "-E(111)"] = v;
    auto couplings = [](const EffectiveCouplings& c) { return json{{"J1", c.J1}, {"J2", c.J2}, {"Jprime", c.Jprime}}; };
    return json{
        {"hierarchy",
         {{"detuning_over_interdot", r.hierarchy.detuning_over_interdot},
          {"interdot_ratio", r.hierarchy.interdot_ratio},
          {"interdot_over_intradot", r.hierarchy.interdot_over_intradot},
          {"holds", r.hierarchy.holds()},
          {"warnings", r.hierarchy.warnings}}},
        {"denominators", den},
        {"coupling_error", r.coupling_error ? json(*r.coupling_error) : json(nullptr)},
        {"couplings", {{"conventional", couplings(r.couplings)}, {"projector", couplings(r.projector_couplings)}}},
        {"schrieffer_wolff",
         {{"deviation_conventional", r.sw_deviation_conventional},
          {"deviation_projector", r.sw_deviation_projector},
          {"deviation_vs_exact", r.sw_vs_exact},
          {"heisenberg_fit_residual", r.sw_fit_residual},
          {"breakdown", r.sw_breakdown}}},
        {"doublet_energies",
         {{"corrected", {{"high", r.doublets_corrected.high}, {"low", r.doublets_corrected.low}}},
          {"legacy", {{"high", r.doublets_legacy.high}, {"low", r.doublets_legacy.low}}},
          {"residual_corrected", r.doublet_residual_corrected},
          {"residual_legacy", r.doublet_residual_legacy}}},
        {"switching",
         {{"time_ps", r.switching.time_ps ? json(*r.switching.time_ps) : json(nullptr)},
          {"max_transfer", r.switching.max_transfer},
          {"full_transfer", r.switching.full_transfer},
          {"detuning", r.switching.detuning},
          {"legacy_condition_residual", r.switching.legacy_condition_residual},
          {"detuning_zero_residual", r.switching.detuning_zero_residual},
          {"jprime_for_legacy_condition", r.jprime_for_legacy_condition},
          {"jprime_for_zero_detuning", r.jprime_for_zero_detuning},
          {"conditions_coincide", r.switching_conditions_coincide},
          {"max_transfer_at_legacy_condition", r.max_transfer_at_legacy_condition}}},
        {"warnings", r.warnings},
    };
}

inline std::string to_text(const ValidationReport& r) {
    std::ostringstream os;
    os << "Energy hierarchy\n"
       << "  |eps1-eps2| / min(U13,U23)     " << r.hierarchy.detuning_over_interdot << "\n"
       << "  U13 / U23                      " << r.hierarchy.interdot_ratio << "\n"
       << "  max(U13,U23) / min(U_intra)    " << r.hierarchy.interdot_over_intradot << "\n";
    os << "Configuration gaps E(ijk) - E(111) [meV]\n";
    for (const auto& [occ, v] : r.denominators)
        os << "  " << occ.label() << "  " << v << (v < 0 ? "  (negative)" : "") << "\n";
    if (r.coupling_error) os << "  error: " << *r.coupling_error << "\n";
    os << "Couplings [meV]        J1            J2            J'\n"
       << "  conventional    " << r.couplings.J1 << "  " << r.couplings.J2 << "  " << r.couplings.Jprime << "\n"
       << "  projector       " << r.projector_couplings.J1 << "  " << r.projector_couplings.J2 << "  "
       << r.projector_couplings.Jprime << "\n";
    os << "Schrieffer-Wolff [meV]\n"
       << "  numerical vs conventional closed form  " << r.sw_deviation_conventional << "\n"
       << "  numerical vs projector closed form     " << r.sw_deviation_projector << "\n"
       << "  numerical vs exact low-energy          " << r.sw_vs_exact << (r.sw_breakdown ? "  (breakdown)" : "") << "\n";
    os << "Doublet energies [meV]   high          low           residual\n"
       << "  corrected        " << r.doublets_corrected.high << "  " << r.doublets_corrected.low << "  "
       << r.doublet_residual_corrected << "\n"
       << "  legacy form      " << r.doublets_legacy.high << "  " << r.doublets_legacy.low << "  "
       << r.doublet_residual_legacy << "\n";
    os << "Switching |0> -> |1>\n"
       << "  max transfer " << r.switching.max_transfer;
    if (r.switching.time_ps) os << " at t* = " << *r.switching.time_ps << " ps";
    os << "\n  J' for zero detuning          " << r.jprime_for_zero_detuning << "\n"
       << "  J' for legacy condition       " << r.jprime_for_legacy_condition << " (max transfer "
       << r.max_transfer_at_legacy_condition << ")\n"
       << "  conditions coincide           " << (r.switching_conditions_coincide ? "yes" : "no") << "\n";
    os << "Warnings (" << r.warnings.size() << ")\n";
    for (const auto& w : r.warnings) os << "  - " << w << "\n";
    return os.str();
}

} // namespace hqsim
