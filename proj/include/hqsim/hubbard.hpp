// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hubbard.hpp
 * @brief Hubbard-like Hamiltonian of the three-level double quantum dot.
 *
 * Orbitals 1 and 2 belong to the left dot, orbital 3 to the right dot.
 * H = H_e + H_t + H_U + H_J with on-site levels, 1↔3 and 2↔3 tunnelling
 * (t12 = 0), intra/inter-level Coulomb terms, and for every pair (i, j) the
 * spin-exchange, pair-hopping and occupation-modulated hopping corrections.
 */

#pragma once

#include <hqsim/fock.hpp>
#include <hqsim/linalg.hpp>

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hqsim {

// ============================================================================
// DotParameters
// ============================================================================

/// Device energies in meV.
struct DotParameters {
    double eps1 = 0, eps2 = 0, eps3 = 0;
    double t13 = 0, t23 = 0;
    double U1 = 0, U2 = 0, U3 = 0;
    double U12 = 0, U13 = 0, U23 = 0;
    double Je12 = 0, Je13 = 0, Je23 = 0;
    double Jp12 = 0, Jp13 = 0, Jp23 = 0;
    double Jt12 = 0, Jt13 = 0, Jt23 = 0;

    bool operator==(const DotParameters&) const = default;
};

using DotParameterField = double DotParameters::*;

/// Every field with its name, in declaration order.
inline const std::array<std::pair<std::string_view, DotParameterField>, 20>& dot_parameter_fields() {
    static const std::array<std::pair<std::string_view, DotParameterField>, 20> fields{{
        {"eps1", &DotParameters::eps1}, {"eps2", &DotParameters::eps2}, {"eps3", &DotParameters::eps3},
        {"t13", &DotParameters::t13},   {"t23", &DotParameters::t23},   {"U1", &DotParameters::U1},
        {"U2", &DotParameters::U2},     {"U3", &DotParameters::U3},     {"U12", &DotParameters::U12},
        {"U13", &DotParameters::U13},   {"U23", &DotParameters::U23},   {"Je12", &DotParameters::Je12},
        {"Je13", &DotParameters::Je13}, {"Je23", &DotParameters::Je23}, {"Jp12", &DotParameters::Jp12},
        {"Jp13", &DotParameters::Jp13}, {"Jp23", &DotParameters::Jp23}, {"Jt12", &DotParameters::Jt12},
        {"Jt13", &DotParameters::Jt13}, {"Jt23", &DotParameters::Jt23},
    }};
    return fields;
}

inline std::optional<DotParameterField> find_dot_parameter(std::string_view name) {
    for (const auto& [n, f] : dot_parameter_fields())
        if (n == name) return f;
    return std::nullopt;
}

/// Parameter set of the silicon device study (t13 = t23 = 0; set them per sweep point).
inline DotParameters silicon_reference_parameters() {
    DotParameters p;
    p.eps1 = 0.0;
    p.eps2 = 0.3;
    p.eps3 = 0.35;
    p.U1 = 9.8;
    p.U2 = 9.8;
    p.U3 = 11.0;
    p.U13 = 1.8;
    p.U23 = 1.8;
    p.U12 = 9.8;
    p.Jt12 = 0.3;
    p.Jt13 = 0.3;
    p.Jt23 = 0.3;
    p.Je12 = 0.5;
    p.Je13 = 0.7;
    p.Je23 = 0.7;
    return p;
}

/// Throws InputError on negative Coulomb energies.
inline void check_parameters(const DotParameters& p) {
    for (auto [name, value] : {std::pair{"U1", p.U1}, {"U2", p.U2}, {"U3", p.U3}, {"U12", p.U12},
                               {"U13", p.U13}, {"U23", p.U23}}) {
        if (value < 0.0) throw InputError(std::string("Coulomb energy ") + name + " must be >= 0");
    }
}

// ============================================================================
// Energy hierarchy check
// ============================================================================

/// "a ≪ b" means a/b <= much_less; "a ~ b" means a/b within [similar_low, similar_high].
struct HierarchyThresholds {
    double much_less = 0.25;
    double similar_low = 0.5;
    double similar_high = 2.0;
};

struct HierarchyReport {
    double detuning_over_interdot = 0;   ///< |ε1 − ε2| / min(U13, U23)
    double interdot_ratio = 0;           ///< U13 / U23
    double interdot_over_intradot = 0;   ///< max(U13, U23) / min(U1, U2, U3, U12)
    std::vector<std::string> warnings;

    bool holds() const { return warnings.empty(); }
};

/// Checks |Δε12| ≪ U13 ~ U23 ≪ U1, U2, U3, U12. Never throws; violations become warnings.
inline HierarchyReport check_hierarchy(const DotParameters& p, const HierarchyThresholds& th = {}) {
    HierarchyReport r;
    auto ratio = [](double a, double b) {
        return b > 0 ? a / b : (a > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    };
    const double inter_min = std::min(p.U13, p.U23);
    const double inter_max = std::max(p.U13, p.U23);
    const double intra_min = std::min({p.U1, p.U2, p.U3, p.U12});
    r.detuning_over_interdot = ratio(std::abs(p.eps1 - p.eps2), inter_min);
    r.interdot_ratio = p.U23 > 0 ? p.U13 / p.U23 : std::numeric_limits<double>::quiet_NaN();
    r.interdot_over_intradot = ratio(inter_max, intra_min);

    if (!(r.detuning_over_interdot <= th.much_less))
        r.warnings.push_back("|eps1 - eps2| is not much smaller than U13, U23 (ratio " +
                             std::to_string(r.detuning_over_interdot) + ")");
    if (!(r.interdot_ratio >= th.similar_low && r.interdot_ratio <= th.similar_high))
        r.warnings.push_back("U13 and U23 are not of the same order (ratio " +
                             std::to_string(r.interdot_ratio) + ")");
    if (!(r.interdot_over_intradot <= th.much_less))
        r.warnings.push_back("inter-dot Coulomb energies are not much smaller than intra-dot ones (ratio " +
                             std::to_string(r.interdot_over_intradot) + ")");
    return r;
}

// ============================================================================
// Hamiltonian
// ============================================================================

/**
 * Range of the orbital sum in the occupation-modulated hopping
 * Σ_{k,σ} J_t n_{kσ} c†_{iσ̄} c_{jσ̄}.
 *
 * pair_orbitals keeps k ∈ {i, j}; this is the spin-rotation invariant
 * bond-charge form. all_orbitals sums k over the three levels; it breaks
 * [H, S²] = 0 whenever J_t and a spectator electron are present.
 */
enum class JtSummation { pair_orbitals, all_orbitals };

struct HubbardOptions {
    JtSummation jt_summation = JtSummation::pair_orbitals;
};

/// Operator strings of H_e + H_t + H_U + H_J.
inline std::vector<Term> hubbard_terms(const DotParameters& p, const HubbardOptions& opt = {}) {
    constexpr std::array spins{Spin::up, Spin::down};
    std::vector<Term> terms;
    auto add = [&terms](double coeff, std::vector<ModeOp> ops) {
        if (coeff != 0.0) terms.push_back(Term{cplx{coeff, 0.0}, std::move(ops)});
    };
    auto add_with_adjoint = [&terms](double coeff, std::vector<ModeOp> ops) {
        if (coeff == 0.0) return;
        Term t{cplx{coeff, 0.0}, std::move(ops)};
        terms.push_back(adjoint(t));
        terms.push_back(std::move(t));
    };

    const std::array eps{p.eps1, p.eps2, p.eps3};
    const std::array onsite{p.U1, p.U2, p.U3};

    // H_e
    for (int k = 1; k <= 3; ++k)
        for (Spin s : spins) add(eps[k - 1], number_string(k, s));

    // H_t
    for (Spin s : spins) {
        add_with_adjoint(p.t13, {cdag(1, s), cann(3, s)});
        add_with_adjoint(p.t23, {cdag(2, s), cann(3, s)});
    }

    // H_U
    for (int k = 1; k <= 3; ++k)
        add(onsite[k - 1], concat(number_string(k, Spin::up), number_string(k, Spin::down)));

    struct Pair {
        int i, j;
        double U, Je, Jp, Jt;
    };
    const std::array pairs{Pair{1, 3, p.U13, p.Je13, p.Jp13, p.Jt13},
                           Pair{2, 3, p.U23, p.Je23, p.Jp23, p.Jt23},
                           Pair{1, 2, p.U12, p.Je12, p.Jp12, p.Jt12}};

    for (const auto& pr : pairs) {
        for (Spin a : spins)
            for (Spin b : spins) add(pr.U, concat(number_string(pr.i, a), number_string(pr.j, b)));
    }

    // H_J
    for (const auto& pr : pairs) {
        const int i = pr.i, j = pr.j;
        for (Spin s : spins) add(-pr.Je, concat(number_string(i, s), number_string(j, s)));

        add_with_adjoint(-pr.Je, {cdag(i, Spin::down), cdag(j, Spin::up), cann(j, Spin::down), cann(i, Spin::up)});
        add_with_adjoint(-pr.Jp, {cdag(j, Spin::up), cdag(j, Spin::down), cann(i, Spin::up), cann(i, Spin::down)});

        std::vector<int> ks{i, j};
        if (opt.jt_summation == JtSummation::all_orbitals) ks = {1, 2, 3};
        for (int k : ks)
            for (Spin s : spins)
                add_with_adjoint(-pr.Jt, concat(number_string(k, s), {cdag(i, flipped(s)), cann(j, flipped(s))}));
    }
    return terms;
}

/// Hubbard matrix on a fixed-particle-number basis (default use: N = 3).
inline HermitianOperator build_hubbard(const DotParameters& p, const FockBasis& basis,
                                       const HubbardOptions& opt = {}) {
    if (!basis.particle_number())
        throw SectorError("Hubbard Hamiltonian needs a fixed particle-number basis");
    check_parameters(p);
    const auto terms = hubbard_terms(p, opt);
    return assemble_operator(std::span<const Term>(terms), basis, Hermiticity::asserted);
}

inline HermitianOperator build_hubbard(const DotParameters& p, const HubbardOptions& opt = {}) {
    return build_hubbard(p, build_basis(3), opt);
}

// ============================================================================
// Spin operators
// ============================================================================

struct SpinOperators {
    HermitianOperator s2;  ///< total S², eigenvalues S(S+1)
    HermitianOperator sz;  ///< total S_z
};

/**
 * Total spin built from S_k = ½ Σ c†_{kσ} σ_{σσ'} c_{kσ'}:
 * S² = Σ_{k,l} [S^z_k S^z_l + ½ (S^+_k S^-_l + S^-_k S^+_l)].
 */
inline SpinOperators spin_operators(const FockBasis& basis) {
    if (!basis.particle_number())
        throw SectorError("spin operators need a fixed particle-number basis");

    constexpr std::array spins{Spin::up, Spin::down};
    auto sgn = [](Spin s) { return s == Spin::up ? 0.5 : -0.5; };

    std::vector<Term> sz_terms;
    for (int k = 1; k <= 3; ++k)
        for (Spin s : spins) sz_terms.push_back({cplx{sgn(s)}, number_string(k, s)});

    std::vector<Term> s2_terms;
    for (int k = 1; k <= 3; ++k) {
        for (int l = 1; l <= 3; ++l) {
            for (Spin a : spins)
                for (Spin b : spins)
                    s2_terms.push_back({cplx{sgn(a) * sgn(b)}, concat(number_string(k, a), number_string(l, b))});
            const std::vector<ModeOp> raise_k{cdag(k, Spin::up), cann(k, Spin::down)};
            const std::vector<ModeOp> lower_k{cdag(k, Spin::down), cann(k, Spin::up)};
            const std::vector<ModeOp> raise_l{cdag(l, Spin::up), cann(l, Spin::down)};
            const std::vector<ModeOp> lower_l{cdag(l, Spin::down), cann(l, Spin::up)};
            s2_terms.push_back({cplx{0.5}, concat(raise_k, lower_l)});
            s2_terms.push_back({cplx{0.5}, concat(lower_k, raise_l)});
        }
    }
    return {assemble_operator(std::span<const Term>(s2_terms), basis),
            assemble_operator(std::span<const Term>(sz_terms), basis)};
}

// ============================================================================
// Exact spectrum
// ============================================================================

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;  ///< ascending, meV
    MatrixXc eigenvectors;        ///< columns over `basis`
    std::optional<FockBasis> basis;
    std::vector<double> spin;     ///< S per eigenvector (empty without a Fock basis)
    std::vector<HalfInt> sz;      ///< Sz per eigenvector (empty without a Fock basis)
    double max_residual = 0;      ///< max ‖Hv − λv‖
};

/**
 * Full eigendecomposition. With a particle-number basis every eigenvector
 * is tagged with (S, Sz); degenerate levels are resolved by simultaneous
 * diagonalization with S² and Sz.
 */
inline SpectrumResult exact_spectrum(const HermitianOperator& h) {
    if (hermiticity_defect(h.matrix) > hermiticity_tolerance * std::max(1.0, h.matrix.cwiseAbs().maxCoeff()))
        throw NonHermitianError("exact_spectrum needs a Hermitian operator");

    SpectrumResult r;
    r.basis = h.basis;
    if (h.basis && h.basis->particle_number()) {
        const auto spin = spin_operators(*h.basis);
        auto tagged = tagged_eigensystem(h.matrix, spin.s2.matrix, spin.sz.matrix);
        r.eigenvalues = std::move(tagged.values);
        r.eigenvectors = std::move(tagged.vectors);
        r.spin = std::move(tagged.spin);
        r.sz = std::move(tagged.sz);
    } else {
        auto es = hermitian_eigensystem(h.matrix);
        r.eigenvalues = std::move(es.values);
        r.eigenvectors = std::move(es.vectors);
    }
    r.max_residual = max_eigen_residual(h.matrix, r.eigenvalues, r.eigenvectors);
    return r;
}

} // namespace hqsim
