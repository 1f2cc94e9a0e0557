// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file linalg.hpp
 * @brief Dense Hermitian eigensolves and spin-tagged simultaneous diagonalization.
 */

#pragma once

#include <hqsim/core.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace hqsim {

struct Eigensystem {
    Eigen::VectorXd values;  ///< ascending
    MatrixXc vectors;        ///< columns
};

inline Eigensystem hermitian_eigensystem(const MatrixXc& h) {
    if (h.rows() != h.cols()) throw DimensionError("eigensolve of a non-square matrix");
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(h);
    if (solver.info() != Eigen::Success) {
        const double norm = h.size() ? h.norm() : 0.0;
        throw NumericalError("Hermitian eigensolver did not converge (dim " +
                             std::to_string(h.rows()) + ", Frobenius norm " + std::to_string(norm) +
                             ", Hermiticity defect " + std::to_string(hermiticity_defect(h)) + ")");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Rotate so the largest-magnitude amplitude is real and positive.
inline void fix_global_phase(Eigen::Ref<VectorXc> v) {
    if (v.size() == 0) return;
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const double mag = std::abs(v(imax));
    if (mag == 0.0) return;
    v *= std::conj(v(imax)) / mag;
}

/// Nearest half-integer S with S(S+1) = s2.
inline double spin_from_casimir(double s2) {
    const double s = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * s2)));
    return std::round(2.0 * s) / 2.0;
}

/// Eigendecomposition of H with each vector tagged by (S, Sz).
struct TaggedEigensystem {
    Eigen::VectorXd values;
    MatrixXc vectors;
    std::vector<double> spin;     ///< S per column
    std::vector<HalfInt> sz;      ///< Sz per column
};

namespace detail {

/// Consecutive ranges [begin, end) of `values` whose neighbours differ by <= tol.
inline std::vector<std::pair<Eigen::Index, Eigen::Index>> degenerate_blocks(const Eigen::VectorXd& values,
                                                                             double tol) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values(i) - values(i - 1) > tol) {
            blocks.emplace_back(begin, i);
            begin = i;
        }
    }
    return blocks;
}

/// Diagonalize `op` inside span(vectors.middleCols(b, e-b)) and rotate those columns.
inline Eigen::VectorXd rediagonalize_block(MatrixXc& vectors, const MatrixXc& op, Eigen::Index b,
                                           Eigen::Index e) {
    const MatrixXc block = vectors.middleCols(b, e - b);
    MatrixXc reduced = block.adjoint() * op * block;
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    const auto sub = hermitian_eigensystem(reduced);
    vectors.middleCols(b, e - b) = block * sub.vectors;
    return sub.values;
}

} // namespace detail

inline constexpr double degeneracy_tolerance = 1e-9;

/**
 * Diagonalize H, then resolve each degenerate block by diagonalizing S²
 * inside it, then Sz inside each (H, S²) block. Requires [H, S²] = [H, Sz] = 0.
 */
inline TaggedEigensystem tagged_eigensystem(const MatrixXc& h, const MatrixXc& s2, const MatrixXc& sz,
                                            double tol = degeneracy_tolerance) {
    if (s2.rows() != h.rows() || sz.rows() != h.rows())
        throw DimensionError("spin operators do not match the Hamiltonian dimension");
    auto es = hermitian_eigensystem(h);
    MatrixXc vecs = es.vectors;

    for (auto [b, e] : detail::degenerate_blocks(es.values, tol)) {
        if (e - b == 1) continue;
        const Eigen::VectorXd casimir = detail::rediagonalize_block(vecs, s2, b, e);
        for (auto [sb, se] : detail::degenerate_blocks(casimir, 1e-6)) {
            if (se - sb > 1) detail::rediagonalize_block(vecs, sz, b + sb, b + se);
        }
    }

    TaggedEigensystem out;
    const auto n = h.rows();
    out.values.resize(n);
    out.vectors = vecs;
    out.spin.resize(static_cast<std::size_t>(n));
    out.sz.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        auto v = out.vectors.col(i);
        fix_global_phase(v);
        out.values(i) = (v.adjoint() * h * v)(0, 0).real();
        const double s2v = (v.adjoint() * s2 * v)(0, 0).real();
        const double szv = (v.adjoint() * sz * v)(0, 0).real();
        out.spin[static_cast<std::size_t>(i)] = spin_from_casimir(s2v);
        out.sz[static_cast<std::size_t>(i)] = HalfInt{static_cast<int>(std::lround(2.0 * szv))};
    }

    // Rayleigh quotients inside a degenerate block can come out of order at round-off level.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return out.values(a) < out.values(b); });
    TaggedEigensystem sorted;
    sorted.values.resize(n);
    sorted.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        sorted.values(i) = out.values(src);
        sorted.vectors.col(i) = out.vectors.col(src);
        sorted.spin.push_back(out.spin[static_cast<std::size_t>(src)]);
        sorted.sz.push_back(out.sz[static_cast<std::size_t>(src)]);
    }
    return sorted;
}

/// max_i ‖H v_i − λ_i v_i‖
inline double max_eigen_residual(const MatrixXc& h, const Eigen::VectorXd& values, const MatrixXc& vectors) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        worst = std::max(worst, (h * vectors.col(i) - values(i) * vectors.col(i)).norm());
    return worst;
}

/// Spectral norm for Hermitian matrices (largest |eigenvalue|).
inline double spectral_norm(const MatrixXc& h) {
    if (h.size() == 0) return 0.0;
    const auto es = hermitian_eigensystem(0.5 * (h + h.adjoint()));
    return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
}

inline MatrixXc commutator(const MatrixXc& a, const MatrixXc& b) { return a * b - b * a; }

} // namespace hqsim
