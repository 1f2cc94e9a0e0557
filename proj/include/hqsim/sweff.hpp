// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweff.hpp
 * @brief Schrieffer-Wolff reduction of the Hubbard model to three exchange-coupled spins.
 *
 * Two routes to the same effective Hamiltonian:
 *  - effective_couplings(): closed-form J1, J2, J' from configuration energies;
 *  - numerical_sw(): H_eff = PHP − Σ_c PHQ_c HP / ΔE_c on the exact Hubbard
 *    matrix, with P the singly occupied (111) block and Q_c the retained
 *    double-occupancy configurations.
 * extract_couplings_from_sw() fits the numerical result back onto the
 * Heisenberg form so the two routes can be compared.
 */

#pragma once

#include <hqsim/couplings.hpp>
#include <hqsim/hubbard.hpp>
#include <hqsim/spins.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace hqsim {

/// E_(ijk) = iε1 + jε2 + kε3 + ij U12 + ik U13 + kj U23 + [i=2]U1 + [j=2]U2 + [k=2]U3
inline double config_energy(const ConfigurationOccupancy& occ, const DotParameters& p) {
    if (!occ.valid()) throw InputError("invalid occupancy " + occ.label());
    const auto [i, j, k] = occ;
    return i * p.eps1 + j * p.eps2 + k * p.eps3 + i * j * p.U12 + i * k * p.U13 + k * j * p.U23 +
           (i == 2 ? p.U1 : 0.0) + (j == 2 ? p.U2 : 0.0) + (k == 2 ? p.U3 : 0.0);
}

inline double config_gap(const ConfigurationOccupancy& occ, const DotParameters& p) {
    return config_energy(occ, p) - config_energy(single_occupancy, p);
}

inline constexpr double singular_gap_tolerance = 1e-12;

/// Gap zero up to the round-off of the configuration energies themselves.
inline bool singular_gap(const ConfigurationOccupancy& occ, const DotParameters& p) {
    const double scale = std::max({1.0, std::abs(config_energy(occ, p)), std::abs(config_energy(single_occupancy, p))});
    return std::abs(config_gap(occ, p)) <= singular_gap_tolerance * scale;
}

inline constexpr ConfigurationOccupancy occ_012{0, 1, 2};
inline constexpr ConfigurationOccupancy occ_102{1, 0, 2};
inline constexpr ConfigurationOccupancy occ_201{2, 0, 1};
inline constexpr ConfigurationOccupancy occ_021{0, 2, 1};

/**
 * Prefactor of the superexchange terms.
 *
 * conventional: 4(t − J_t)²/ΔE per retained configuration.
 * projector: 2(t − J_t)²/ΔE, what PHQ_c HP/ΔE_c yields for a single
 *            configuration; agrees with numerical_sw() to round-off.
 */
enum class SuperexchangeNormalization { conventional, projector };

constexpr double superexchange_prefactor(SuperexchangeNormalization n) {
    return n == SuperexchangeNormalization::conventional ? 4.0 : 2.0;
}

/**
 * J1 = f (t13 − Jt13)² / ΔE_(012) − 2 Je13
 * J2 = f (t23 − Jt23)² / ΔE_(102) − 2 Je23
 * J' = f Jt12² [1/ΔE_(201) + 1/ΔE_(021)] − 2 Je12
 * with f from the chosen normalization. Vanishing denominators throw
 * SingularConfigurationError; negative ones are kept and warned about.
 */
inline EffectiveCouplings effective_couplings(const DotParameters& p,
                                              SuperexchangeNormalization norm = SuperexchangeNormalization::conventional) {
    EffectiveCouplings c;
    for (const auto& occ : {occ_012, occ_102, occ_201, occ_021}) {
        const double gap = config_gap(occ, p);
        if (singular_gap(occ, p))
            throw SingularConfigurationError("configuration " + occ.label() +
                                             " is degenerate with (111): zero denominator");
        if (gap < 0.0)
            c.warnings.push_back("E" + occ.label() + " - E(111) = " + std::to_string(gap) +
                                 " meV is negative; perturbative validity is doubtful");
        c.denominators[occ] = gap;
    }
    const double f = superexchange_prefactor(norm);
    const double h13 = p.t13 - p.Jt13, h23 = p.t23 - p.Jt23;
    c.J1 = f * h13 * h13 / c.denominators[occ_012] - 2.0 * p.Je13;
    c.J2 = f * h23 * h23 / c.denominators[occ_102] - 2.0 * p.Je23;
    c.Jprime = f * p.Jt12 * p.Jt12 * (1.0 / c.denominators[occ_201] + 1.0 / c.denominators[occ_021]) - 2.0 * p.Je12;
    return c;
}

// ============================================================================
// Projector-method effective Hamiltonian
// ============================================================================

struct SwOptions {
    /// Also eliminate (201) and (021); (012) and (102) are always kept,
    /// (210) and (120) never.
    bool retain_outer_classes = true;
    HubbardOptions hubbard;
};

inline std::vector<ConfigurationOccupancy> retained_classes(const SwOptions& opt) {
    std::vector<ConfigurationOccupancy> out{occ_012, occ_102};
    if (opt.retain_outer_classes) {
        out.push_back(occ_201);
        out.push_back(occ_021);
    }
    return out;
}

inline ConfigurationOccupancy occupancy_of(FockState s) {
    return {s.orbital_occupation(1), s.orbital_occupation(2), s.orbital_occupation(3)};
}

/**
 * PHP − Σ_c PHQ_c HP / (E_c − E_(111)) as an 8×8 matrix on the three-spin
 * product basis. Product state |s1 s2 s3> is identified with
 * c†_{1 s1} c†_{2 s2} c†_{3 s3}|vac>.
 */
inline HermitianOperator numerical_sw(const DotParameters& p, const SwOptions& opt = {}) {
    const auto basis = build_basis(3);
    const auto h = build_hubbard(p, basis, opt.hubbard);

    // P block in product order, with creation-order signs.
    std::vector<Eigen::Index> p_rows(spin_dim);
    Eigen::VectorXd p_sign(spin_dim);
    for (int idx = 0; idx < spin_dim; ++idx) {
        const std::vector<ModeOp> create{cdag(1, spin_of(idx, 1)), cdag(2, spin_of(idx, 2)), cdag(3, spin_of(idx, 3))};
        const auto s = apply_string(create, FockState::vacuum());
        const auto row = s ? basis.index_of(s->state) : std::nullopt;
        if (!row) throw NumericalError("empty P block");
        p_rows[static_cast<std::size_t>(idx)] = static_cast<Eigen::Index>(*row);
        p_sign(idx) = s->sign;
    }

    auto rows_of = [&](const std::vector<Eigen::Index>& idx) {
        MatrixXc m(static_cast<Eigen::Index>(idx.size()), h.matrix.cols());
        for (std::size_t r = 0; r < idx.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = h.matrix.row(idx[r]);
        return m;
    };
    const MatrixXc h_p_rows = p_sign.asDiagonal() * rows_of(p_rows);  // P H (full columns)

    auto restrict_cols = [](const MatrixXc& m, const std::vector<Eigen::Index>& cols) {
        MatrixXc out(m.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(cols[c]);
        return out;
    };

    const MatrixXc h_pp = restrict_cols(h_p_rows, p_rows) * p_sign.asDiagonal();
    MatrixXc heff = h_pp;

    for (const auto& cls : retained_classes(opt)) {
        const double gap = config_gap(cls, p);
        if (singular_gap(cls, p))
            throw SingularConfigurationError("configuration " + cls.label() + " has zero energy gap to (111)");
        std::vector<Eigen::Index> q_cols;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (occupancy_of(basis.state_at(i)) == cls) q_cols.push_back(static_cast<Eigen::Index>(i));
        const MatrixXc h_pq = restrict_cols(h_p_rows, q_cols);
        heff -= (h_pq * h_pq.adjoint()) / gap;
    }

    HermitianOperator out;
    out.matrix = 0.5 * (heff + heff.adjoint());
    out.hermitian = true;
    return out;
}

// ============================================================================
// Fitting back to the Heisenberg form
// ============================================================================

struct HeisenbergFit {
    EffectiveCouplings couplings;
    double constant = 0;          ///< coefficient of the identity
    double residual = 0;          ///< ‖H − fit‖_F
    bool heisenberg_form = false; ///< residual within tolerance
};

inline constexpr double heisenberg_fit_tolerance = 1e-8;

/// Least-squares fit of an 8×8 operator onto {S1·S3, S2·S3, S1·S2, I}.
inline HeisenbergFit extract_couplings_from_sw(const HermitianOperator& h8) {
    if (h8.matrix.rows() != spin_dim || h8.matrix.cols() != spin_dim)
        throw DimensionError("Heisenberg fit needs an 8x8 operator");

    const std::array<SpinMatrix, 4> generators{pair_exchange(1, 3), pair_exchange(2, 3), pair_exchange(1, 2),
                                               SpinMatrix::Identity()};
    constexpr int n = spin_dim * spin_dim;
    Eigen::MatrixXd design(2 * n, 4);
    Eigen::VectorXd rhs(2 * n);
    for (int g = 0; g < 4; ++g) {
        const auto& m = generators[static_cast<std::size_t>(g)];
        for (int e = 0; e < n; ++e) {
            design(e, g) = m(e % spin_dim, e / spin_dim).real();
            design(n + e, g) = m(e % spin_dim, e / spin_dim).imag();
        }
    }
    for (int e = 0; e < n; ++e) {
        rhs(e) = h8.matrix(e % spin_dim, e / spin_dim).real();
        rhs(n + e) = h8.matrix(e % spin_dim, e / spin_dim).imag();
    }
    const Eigen::Vector4d x = design.colPivHouseholderQr().solve(rhs);

    HeisenbergFit fit;
    fit.couplings = EffectiveCouplings::from(x(0), x(1), x(2));
    fit.constant = x(3);
    fit.residual = (design * x - rhs).norm();
    fit.heisenberg_form = fit.residual <= heisenberg_fit_tolerance * std::max(1.0, h8.matrix.norm());
    return fit;
}

/// max |λ_i(A − tr A/8) − λ_i(B − tr B/8)| over the sorted spectra.
inline double traceless_spectral_distance(const MatrixXc& a, const MatrixXc& b) {
    if (a.rows() != b.rows()) throw DimensionError("spectral comparison of different dimensions");
    const auto n = static_cast<double>(a.rows());
    const MatrixXc a0 = a - (a.trace() / n) * MatrixXc::Identity(a.rows(), a.cols());
    const MatrixXc b0 = b - (b.trace() / n) * MatrixXc::Identity(b.rows(), b.cols());
    return (hermitian_eigensystem(a0).values - hermitian_eigensystem(b0).values).cwiseAbs().maxCoeff();
}

/// Spectral disagreement between numerical_sw() and the closed-form exchange model.
inline double sw_spectral_deviation(const DotParameters& p,
                                    SuperexchangeNormalization norm = SuperexchangeNormalization::conventional,
                                    const SwOptions& opt = {}) {
    const auto numeric = numerical_sw(p, opt);
    const auto analytic = heisenberg_matrix(effective_couplings(p, norm));
    return traceless_spectral_distance(numeric.matrix, analytic);
}

/// Multiply every inter-orbital hopping amplitude (t, J_t, J_p) by s.
inline DotParameters scale_hopping(DotParameters p, double s) {
    for (double DotParameters::*f : {&DotParameters::t13, &DotParameters::t23, &DotParameters::Jt12, &DotParameters::Jt13,
                                     &DotParameters::Jt23, &DotParameters::Jp12, &DotParameters::Jp13, &DotParameters::Jp23})
        p.*f *= s;
    return p;
}

} // namespace hqsim
