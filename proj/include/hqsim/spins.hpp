// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spins.hpp
 * @brief Three-spin exchange model, logical qubit basis and Bloch coordinates.
 *
 * Product basis |s1 s2 s3> ordered (↑↑↑, ↑↑↓, ↑↓↑, ↑↓↓, ↓↑↑, ↓↑↓, ↓↓↑, ↓↓↓):
 * index = 4·[s1=↓] + 2·[s2=↓] + [s3=↓]. Spins 1, 2 sit in the left dot and
 * spin 3 in the right dot.
 */

#pragma once

#include <hqsim/couplings.hpp>
#include <hqsim/fock.hpp>
#include <hqsim/linalg.hpp>

#include <array>
#include <cmath>
#include <string>

namespace hqsim {

inline constexpr int spin_dim = 8;

using SpinVector = Eigen::Matrix<cplx, spin_dim, 1>;
using SpinMatrix = Eigen::Matrix<cplx, spin_dim, spin_dim>;

constexpr int product_index(Spin s1, Spin s2, Spin s3) {
    return 4 * static_cast<int>(s1) + 2 * static_cast<int>(s2) + static_cast<int>(s3);
}

/// Spin of particle p ∈ {1,2,3} in product state `index`.
constexpr Spin spin_of(int index, int particle) {
    return ((index >> (3 - particle)) & 1) ? Spin::down : Spin::up;
}

/// Fock state with orbital k holding the electron of spin k.
constexpr FockState product_state_to_fock(int index) {
    unsigned bits = 0;
    for (int k = 1; k <= 3; ++k) bits |= 1u << mode_index(k, spin_of(index, k));
    return FockState::from_bits(bits);
}

// ============================================================================
// Spin operators on the product basis
// ============================================================================

/// S_a · S_b for particles a ≠ b.
inline SpinMatrix pair_exchange(int a, int b) {
    SpinMatrix m = SpinMatrix::Zero();
    for (int idx = 0; idx < spin_dim; ++idx) {
        const bool aligned = spin_of(idx, a) == spin_of(idx, b);
        m(idx, idx) += aligned ? 0.25 : -0.25;
        if (!aligned) {
            const int swapped = idx ^ (1 << (3 - a)) ^ (1 << (3 - b));
            m(swapped, idx) += 0.5;
        }
    }
    return m;
}

inline SpinMatrix total_sz() {
    SpinMatrix m = SpinMatrix::Zero();
    for (int idx = 0; idx < spin_dim; ++idx) {
        double s = 0;
        for (int p = 1; p <= 3; ++p) s += spin_of(idx, p) == Spin::up ? 0.5 : -0.5;
        m(idx, idx) = s;
    }
    return m;
}

/// S² = 9/4 + 2 Σ_{a<b} S_a·S_b
inline SpinMatrix total_s2() {
    return 2.25 * SpinMatrix::Identity() + 2.0 * (pair_exchange(1, 2) + pair_exchange(1, 3) + pair_exchange(2, 3));
}

inline SpinMatrix heisenberg_matrix(const EffectiveCouplings& c) {
    return c.J1 * pair_exchange(1, 3) + c.J2 * pair_exchange(2, 3) + c.Jprime * pair_exchange(1, 2);
}

/// J1 S1·S3 + J2 S2·S3 + J' S1·S2 as an operator on the product basis.
inline HermitianOperator heisenberg_hamiltonian(const EffectiveCouplings& c) {
    HermitianOperator op;
    op.matrix = heisenberg_matrix(c);
    op.hermitian = true;
    return op;
}

// ============================================================================
// Logical basis
// ============================================================================

struct LogicalBasis {
    SpinVector zero;  ///< |S>_12 |↓>_3
    SpinVector one;   ///< √(1/3)|T0>_12|↓>_3 − √(2/3)|T−>_12|↑>_3
};

inline LogicalBasis logical_basis() {
    using enum Spin;
    LogicalBasis lb;
    lb.zero.setZero();
    lb.one.setZero();
    const double r2 = std::sqrt(0.5);
    lb.zero(product_index(up, down, down)) = r2;
    lb.zero(product_index(down, up, down)) = -r2;

    const double t0 = std::sqrt(1.0 / 3.0) * r2;
    lb.one(product_index(up, down, down)) = t0;
    lb.one(product_index(down, up, down)) = t0;
    lb.one(product_index(down, down, up)) = -std::sqrt(2.0 / 3.0);
    return lb;
}

/// 2×2 Hamiltonian on {|0>, |1>}, meV.
struct LogicalHamiltonian {
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Zero();

    double h00() const { return matrix(0, 0).real(); }
    double h11() const { return matrix(1, 1).real(); }
    double h01() const { return matrix(0, 1).real(); }
};

/// Closed-form logical matrix elements.
inline LogicalHamiltonian logical_hamiltonian_formula(const EffectiveCouplings& c) {
    LogicalHamiltonian h;
    const double off = -std::sqrt(3.0) / 4.0 * (c.J1 - c.J2);
    h.matrix << -0.75 * c.Jprime, off, off, 0.25 * c.Jprime - 0.5 * (c.J1 + c.J2);
    return h;
}

/// <a|H|b> for a, b ∈ {|0>, |1>}, by direct sandwiching.
inline LogicalHamiltonian logical_hamiltonian_projected(const EffectiveCouplings& c) {
    const auto lb = logical_basis();
    const SpinMatrix h = heisenberg_matrix(c);
    const std::array<const SpinVector*, 2> v{&lb.zero, &lb.one};
    LogicalHamiltonian out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.matrix(a, b) = v[a]->dot(h * *v[b]);
    return out;
}

inline constexpr double logical_projection_tolerance = 1e-12;

/**
 * Logical Hamiltonian from the closed form, cross-checked against direct
 * projection of the three-spin matrix. A mismatch is an internal error.
 */
inline LogicalHamiltonian project_to_logical(const EffectiveCouplings& c) {
    const auto formula = logical_hamiltonian_formula(c);
    const auto projected = logical_hamiltonian_projected(c);
    const double scale = std::max({1.0, std::abs(c.J1), std::abs(c.J2), std::abs(c.Jprime)});
    const double gap = (formula.matrix - projected.matrix).cwiseAbs().maxCoeff();
    if (gap > logical_projection_tolerance * scale)
        throw NumericalError("logical projection disagrees with closed form by " + std::to_string(gap));
    return formula;
}

// ============================================================================
// Eigensystem of the three-spin model
// ============================================================================

/// √(J'² + J2² + J1² − J'J2 − J1J2 − J'J1), evaluated as a sum of squared
/// differences so that it vanishes exactly for uniform couplings.
inline double doublet_splitting(const EffectiveCouplings& c) {
    const double a = c.Jprime - c.J2, b = c.J2 - c.J1, d = c.J1 - c.Jprime;
    return std::sqrt(0.5 * (a * a + b * b + d * d));
}

struct DoubletEnergies {
    double high;
    double low;
};

/// Legacy closed form −(ΣJ ∓ Ω)/2. Not an eigenvalue of the exchange model in
/// general; kept so the validation report can show the discrepancy.
inline DoubletEnergies legacy_doublet_energies(const EffectiveCouplings& c) {
    const double sum = c.Jprime + c.J1 + c.J2;
    const double omega = doublet_splitting(c);
    return {-(sum - omega) / 2.0, -(sum + omega) / 2.0};
}

/// (−ΣJ ± 2Ω)/4: consistent with the total-spin Casimir and both two-spin limits.
inline DoubletEnergies doublet_energies(const EffectiveCouplings& c) {
    const double sum = c.Jprime + c.J1 + c.J2;
    const double omega = doublet_splitting(c);
    return {(-sum + 2.0 * omega) / 4.0, (-sum - 2.0 * omega) / 4.0};
}

enum class VectorProvenance { closed_form, numerical };

struct LabeledState {
    std::string label;
    double energy = 0;
    double spin = 0;
    HalfInt sz;
    SpinVector vector = SpinVector::Zero();
    VectorProvenance provenance = VectorProvenance::closed_form;
};

struct AnalyticEigensystem {
    double quadruplet_energy = 0;
    double doublet_high = 0;   ///< E_Δ
    double doublet_low = 0;    ///< E_Δ'
    double omega = 0;
    bool degenerate = false;   ///< Ω below tolerance; doublet basis is arbitrary
    /// Q+3/2, Q+1/2, Q−1/2, Q−3/2, Δ+1/2, Δ−1/2, Δ'+1/2, Δ'−1/2
    std::array<LabeledState, 8> states;
};

inline constexpr double omega_degeneracy_tolerance = 1e-9;

namespace detail {

struct SzSector {
    HalfInt sz;
    std::array<int, 3> idx;  ///< the three product states with this Sz
};

// Sz = +1/2: (↑↑↓, ↑↓↑, ↓↑↑); Sz = −1/2: (↑↓↓, ↓↑↓, ↓↓↑)
inline const std::array<SzSector, 2>& doublet_sectors() {
    static const std::array<SzSector, 2> s{SzSector{HalfInt{1}, {1, 2, 4}}, SzSector{HalfInt{-1}, {3, 5, 6}}};
    return s;
}

inline SpinVector from_amplitudes(const std::array<int, 3>& idx, double a, double b, double c) {
    SpinVector v = SpinVector::Zero();
    v(idx[0]) = a;
    v(idx[1]) = b;
    v(idx[2]) = c;
    return v;
}

/// Doublet pair (high, low) of one Sz sector, by diagonalizing H on the
/// orthogonal complement of the quadruplet state.
inline std::array<SpinVector, 2> numerical_doublets(const SpinMatrix& h, const SzSector& sector) {
    const auto& i = sector.idx;
    Eigen::Matrix<cplx, spin_dim, 2> u;
    u.col(0) = from_amplitudes(i, 1.0, -1.0, 0.0) / std::sqrt(2.0);
    u.col(1) = from_amplitudes(i, 1.0, 1.0, -2.0) / std::sqrt(6.0);
    Eigen::Matrix2cd reduced = u.adjoint() * h * u;
    reduced = (0.5 * (reduced + reduced.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(reduced);
    SpinVector low = u * es.eigenvectors().col(0);
    SpinVector high = u * es.eigenvectors().col(1);
    return {high, low};
}

} // namespace detail

/**
 * Quadruplet and doublet eigenpairs of J1 S1·S3 + J2 S2·S3 + J' S1·S2.
 * Doublet vectors start from the closed-form amplitude patterns; any that
 * fail the eigen-residual test (or vanish) are replaced by numerically
 * computed ones and marked VectorProvenance::numerical.
 */
inline AnalyticEigensystem analytic_eigensystem(const EffectiveCouplings& c) {
    AnalyticEigensystem es;
    const double j1 = c.J1, j2 = c.J2, jp = c.Jprime;
    es.omega = doublet_splitting(c);
    es.quadruplet_energy = (jp + j1 + j2) / 4.0;
    const auto de = doublet_energies(c);
    es.doublet_high = de.high;
    es.doublet_low = de.low;
    es.degenerate = es.omega <= omega_degeneracy_tolerance;

    const SpinMatrix h = heisenberg_matrix(c);
    const double scale = std::max({1.0, std::abs(j1), std::abs(j2), std::abs(jp)});
    const double residual_tol = 1e-10 * scale;
    const double inv3 = 1.0 / std::sqrt(3.0);

    auto quad = [&](std::string label, HalfInt sz, SpinVector v) {
        return LabeledState{std::move(label), es.quadruplet_energy, 1.5, sz, v, VectorProvenance::closed_form};
    };
    SpinVector q;
    q.setZero();
    q(0) = 1.0;
    es.states[0] = quad("Q+3/2", HalfInt{3}, q);
    es.states[1] = quad("Q+1/2", HalfInt{1}, detail::from_amplitudes({1, 2, 4}, inv3, inv3, inv3));
    es.states[2] = quad("Q-1/2", HalfInt{-1}, detail::from_amplitudes({3, 5, 6}, inv3, inv3, inv3));
    q.setZero();
    q(7) = 1.0;
    es.states[3] = quad("Q-3/2", HalfInt{-3}, q);

    const double om = es.omega;
    const auto& plus = detail::doublet_sectors()[0];
    const auto& minus = detail::doublet_sectors()[1];
    // Closed-form amplitude patterns (high doublet, then low doublet).
    const std::array<SpinVector, 4> patterns{
        detail::from_amplitudes(plus.idx, j2 - jp - om, j1 - j2 + om, jp - j1),
        detail::from_amplitudes(minus.idx, j2 - jp + om, jp - j1 - om, j1 - j2),
        detail::from_amplitudes(plus.idx, j2 - jp + om, j1 - j2 - om, jp - j1),
        detail::from_amplitudes(minus.idx, j2 - j1 - om, jp - j1 + om, j1 - j2),
    };
    const std::array<std::string, 4> labels{"D+1/2", "D-1/2", "D'+1/2", "D'-1/2"};
    const std::array<HalfInt, 4> szs{HalfInt{1}, HalfInt{-1}, HalfInt{1}, HalfInt{-1}};
    const std::array<double, 4> energies{de.high, de.high, de.low, de.low};

    std::array<std::array<SpinVector, 2>, 2> numeric{detail::numerical_doublets(h, plus),
                                                      detail::numerical_doublets(h, minus)};

    for (std::size_t n = 0; n < 4; ++n) {
        LabeledState st{labels[n], energies[n], 0.5, szs[n], patterns[n], VectorProvenance::closed_form};
        const std::size_t sector = n % 2;
        const std::size_t level = n / 2;  // 0 = high, 1 = low
        bool accept = !es.degenerate && st.vector.norm() > 1e-8 * scale;
        if (accept) {
            st.vector.normalize();
            // Keep the low doublet orthogonal to the already accepted high one.
            if (level == 1) {
                const auto& partner = es.states[4 + sector].vector;
                st.vector -= partner * partner.dot(st.vector);
                accept = st.vector.norm() > 1e-8;
                if (accept) st.vector.normalize();
            }
            accept = accept && (h * st.vector - st.energy * st.vector).norm() <= residual_tol;
        }
        if (!accept) {
            st.vector = numeric[sector][level];
            st.provenance = VectorProvenance::numerical;
        }
        fix_global_phase(st.vector);
        es.states[4 + n] = std::move(st);
    }
    for (auto& st : es.states) fix_global_phase(st.vector);
    return es;
}

/// Numerically computed eigenpairs of the exchange model, tagged by (S, Sz).
inline TaggedEigensystem numerical_spin_eigensystem(const EffectiveCouplings& c) {
    return tagged_eigensystem(heisenberg_matrix(c), total_s2(), total_sz());
}

// ============================================================================
// Two-spin limits
// ============================================================================

enum class LimitCase {
    right_dot,  ///< J2 dominant: spins 2, 3 pair up
    left_dot,   ///< J' dominant: spins 1, 2 pair up
};

struct NamedSpinVector {
    std::string label;
    SpinVector vector;
};

/// Doublets of the dominant-pair limits, ordered (D+1/2, D−1/2, D'+1/2, D'−1/2).
inline std::array<NamedSpinVector, 4> limiting_doublets(LimitCase which) {
    using enum Spin;
    const double r6 = 1.0 / std::sqrt(6.0), r2 = 1.0 / std::sqrt(2.0);
    auto vec = [](std::initializer_list<std::pair<int, double>> amps) {
        SpinVector v = SpinVector::Zero();
        for (auto [i, a] : amps) v(i) = a;
        return v;
    };
    const int uud = product_index(up, up, down), udu = product_index(up, down, up),
              duu = product_index(down, up, up), ddu = product_index(down, down, up),
              dud = product_index(down, up, down), udd = product_index(up, down, down);
    if (which == LimitCase::right_dot) {
        return {NamedSpinVector{"D+1/2", vec({{uud, r6}, {udu, r6}, {duu, -2 * r6}})},
                NamedSpinVector{"D-1/2", vec({{ddu, r6}, {dud, r6}, {udd, -2 * r6}})},
                NamedSpinVector{"D'+1/2", vec({{uud, r2}, {udu, -r2}})},
                NamedSpinVector{"D'-1/2", vec({{ddu, r2}, {dud, -r2}})}};
    }
    return {NamedSpinVector{"Dbar+1/2", vec({{duu, r6}, {udu, r6}, {uud, -2 * r6}})},
            NamedSpinVector{"Dbar-1/2", vec({{udd, r6}, {dud, r6}, {ddu, -2 * r6}})},
            NamedSpinVector{"Dbar'+1/2", vec({{udu, r2}, {duu, -r2}})},
            NamedSpinVector{"Dbar'-1/2", vec({{dud, r2}, {udd, -r2}})}};
}

// ============================================================================
// Qubit state and Bloch sphere
// ============================================================================

/// a|0> + b|1>
struct QubitState {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    double norm_squared() const { return std::norm(a) + std::norm(b); }
    static QubitState zero() { return {cplx{1.0}, cplx{0.0}}; }
    static QubitState one() { return {cplx{0.0}, cplx{1.0}}; }
};

inline constexpr double qubit_norm_tolerance = 1e-10;

struct BlochPoint {
    double x = 0, y = 0, z = 0;
};

/// |0> at the north pole: z = |a|² − |b|², x + iy = 2 a b*.
inline BlochPoint bloch_coordinates(const QubitState& q) {
    if (std::abs(q.norm_squared() - 1.0) > qubit_norm_tolerance)
        throw NormalizationError("Bloch coordinates need a normalized state (|a|^2+|b|^2 = " +
                                 std::to_string(q.norm_squared()) + ")");
    const cplx ab = q.a * std::conj(q.b);
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(q.a) - std::norm(q.b)};
}

/// Logical components of a three-spin vector.
inline QubitState to_logical(const SpinVector& v) {
    const auto lb = logical_basis();
    return {lb.zero.dot(v), lb.one.dot(v)};
}

} // namespace hqsim
