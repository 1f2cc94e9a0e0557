// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Time evolution of the logical qubit under piecewise-constant couplings.
 *
 * iħ dψ/dt = H ψ with energies in meV and times in ps. The two-level closed
 * form is written in terms of A = H00, B = H11, C = H01,
 * α = (A + B)/2, β = √((A − B)² + 4|C|²)/2, λ1,2 = −i(α ∓ β)/ħ.
 */

#pragma once

#include <hqsim/linalg.hpp>
#include <hqsim/spins.hpp>

#include <cmath>
#include <numbers>
#include <optional>

namespace hqsim {

struct DynamicsCoefficients {
    double A = 0, B = 0;  ///< diagonal elements, meV
    cplx C{};             ///< off-diagonal element <0|H|1>, meV
    double alpha = 0;     ///< mean energy, meV
    double beta = 0;      ///< half splitting, meV (>= 0)
    cplx lambda1{}, lambda2{};  ///< 1/ps, purely imaginary
};

inline DynamicsCoefficients dynamics_coefficients(const LogicalHamiltonian& h) {
    DynamicsCoefficients k;
    k.A = h.matrix(0, 0).real();
    k.B = h.matrix(1, 1).real();
    k.C = h.matrix(0, 1);
    k.alpha = 0.5 * (k.A + k.B);
    k.beta = 0.5 * std::sqrt((k.A - k.B) * (k.A - k.B) + 4.0 * std::norm(k.C));
    k.lambda1 = cplx{0.0, -(k.alpha - k.beta) / hbar_meV_ps};
    k.lambda2 = cplx{0.0, -(k.alpha + k.beta) / hbar_meV_ps};
    return k;
}

/// Coefficients under the legacy labelling: A = 3J'/4, B = (√3/4)(J1 − J2), C = −J'/4 + (J1 + J2)/2.
struct LegacyCoefficients {
    double A = 0, B = 0, C = 0;
};

inline LegacyCoefficients legacy_coefficients(const EffectiveCouplings& c) {
    return {0.75 * c.Jprime, std::sqrt(3.0) / 4.0 * (c.J1 - c.J2), -0.25 * c.Jprime + 0.5 * (c.J1 + c.J2)};
}

namespace detail {

inline void check_normalized(const QubitState& q) {
    if (std::abs(q.norm_squared() - 1.0) > qubit_norm_tolerance)
        throw NormalizationError("qubit state is not normalized (|a|^2+|b|^2 = " + std::to_string(q.norm_squared()) +
                                 ")");
}

} // namespace detail

/**
 * ψ(t) = e^{−iαt/ħ} [cos(βt/ħ) − i sin(βt/ħ) (H − α)/β] ψ(0).
 * For ψ(0) = |0> this is a(t) = e^{−iαt/ħ}[cos(βt/ħ) − i (A − α)/β sin(βt/ħ)],
 * b(t) = −i e^{−iαt/ħ} (C/β) sin(βt/ħ). β = 0 reduces to a pure phase.
 */
inline QubitState evolve_closed_form(const LogicalHamiltonian& h, const QubitState& psi0, double t_ps) {
    if (t_ps < 0.0) throw InputError("closed-form evolution needs t >= 0");
    detail::check_normalized(psi0);
    const auto k = dynamics_coefficients(h);
    const double omega_t = k.beta * t_ps / hbar_meV_ps;
    const cplx phase = std::exp(cplx{0.0, -k.alpha * t_ps / hbar_meV_ps});
    const double cs = std::cos(omega_t);
    const double sn = k.beta > 0.0 ? std::sin(omega_t) / k.beta : 0.0;
    const cplx i{0.0, 1.0};
    QubitState out;
    out.a = phase * (cs * psi0.a - i * sn * ((k.A - k.alpha) * psi0.a + k.C * psi0.b));
    out.b = phase * (cs * psi0.b - i * sn * (std::conj(k.C) * psi0.a + (k.B - k.alpha) * psi0.b));
    return out;
}

inline QubitState evolve_closed_form(const EffectiveCouplings& c, const QubitState& psi0, double t_ps) {
    return evolve_closed_form(project_to_logical(c), psi0, t_ps);
}

/**
 * The amplitude pair for ψ(0) = |0> in the factored form
 * a = e^{−iαt/ħ}/β [β cos(βt/ħ) − i(A − α) sin(βt/ħ)],
 * b = i e^{−iαt/ħ} ((A − α)² − β²)/(βC) sin(βt/ħ).
 * Needs β ≠ 0 and C ≠ 0.
 */
inline std::optional<QubitState> amplitudes_from_zero(const LogicalHamiltonian& h, double t_ps) {
    const auto k = dynamics_coefficients(h);
    if (k.beta == 0.0 || k.C == cplx{}) return std::nullopt;
    const double w = k.beta * t_ps / hbar_meV_ps;
    const cplx i{0.0, 1.0};
    const cplx phase = std::exp(-i * k.alpha * t_ps / hbar_meV_ps);
    const double shift = k.A - k.alpha;
    QubitState out;
    out.a = phase / k.beta * (k.beta * std::cos(w) - i * shift * std::sin(w));
    out.b = i * phase * (shift * shift - k.beta * k.beta) / (k.beta * k.C) * std::sin(w);
    return out;
}

// ============================================================================
// Numerical propagator
// ============================================================================

/// U(t) = V exp(−iΛt/ħ) V† applied to psi0; any dimension.
inline VectorXc evolve_numeric(const MatrixXc& h, const VectorXc& psi0, double t_ps) {
    if (h.rows() != h.cols() || h.rows() != psi0.size())
        throw DimensionError("state of dimension " + std::to_string(psi0.size()) + " does not match a " +
                             std::to_string(h.rows()) + "x" + std::to_string(h.cols()) + " Hamiltonian");
    if (hermiticity_defect(h) > hermiticity_tolerance * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw NonHermitianError("numerical propagation needs a Hermitian Hamiltonian");
    if (std::abs(psi0.squaredNorm() - 1.0) > qubit_norm_tolerance)
        throw NormalizationError("initial state is not normalized");
    const auto es = hermitian_eigensystem(h);
    const VectorXc phases =
        (es.values.cast<cplx>() * cplx{0.0, -t_ps / hbar_meV_ps}).array().exp().matrix();
    return es.vectors * (phases.asDiagonal() * (es.vectors.adjoint() * psi0));
}

inline QubitState evolve_numeric(const LogicalHamiltonian& h, const QubitState& psi0, double t_ps) {
    VectorXc v(2);
    v << psi0.a, psi0.b;
    const VectorXc out = evolve_numeric(MatrixXc(h.matrix), v, t_ps);
    return {out(0), out(1)};
}

// ============================================================================
// Switching |0> → |1>
// ============================================================================

struct SwitchingAnalysis {
    std::optional<double> time_ps;  ///< first maximum of |b(t)|² from |0>; empty without transfer
    double max_transfer = 0;        ///< 4|H01|² / ((H00 − H11)² + 4|H01|²)
    bool full_transfer = false;     ///< zero detuning with H01 ≠ 0
    double detuning = 0;            ///< H00 − H11, meV
    double rabi_period_ps = 0;      ///< period of |b(t)|²; 0 when undefined
    /// 3J' − √3(J1 − J2): the legacy resonance condition asks for this to vanish.
    double legacy_condition_residual = 0;
    /// J' − (J1 + J2)/2: zero exactly when the detuning vanishes.
    double detuning_zero_residual = 0;
};

inline constexpr double detuning_tolerance = 1e-12;

inline SwitchingAnalysis switching_time(const EffectiveCouplings& c) {
    const auto h = project_to_logical(c);
    const auto k = dynamics_coefficients(h);
    SwitchingAnalysis s;
    s.detuning = k.A - k.B;
    s.legacy_condition_residual = 3.0 * c.Jprime - std::sqrt(3.0) * (c.J1 - c.J2);
    s.detuning_zero_residual = c.Jprime - 0.5 * (c.J1 + c.J2);
    if (std::abs(k.C) == 0.0) return s;

    s.max_transfer = 4.0 * std::norm(k.C) / (s.detuning * s.detuning + 4.0 * std::norm(k.C));
    s.time_ps = std::numbers::pi * hbar_meV_ps / (2.0 * k.beta);
    s.rabi_period_ps = std::numbers::pi * hbar_meV_ps / k.beta;
    const double scale = std::max({1.0, std::abs(c.J1), std::abs(c.J2), std::abs(c.Jprime)});
    s.full_transfer = std::abs(s.detuning) <= detuning_tolerance * scale;
    return s;
}

} // namespace hqsim
