// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

namespace hqsim {
namespace {

using testing::silicon_set;

TEST(BuildHubbard, MatchesExplicitProductOracle) {
    std::mt19937_64 rng(11);
    const auto idx = testing::sector_indices(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = testing::random_parameters(rng);
        const Eigen::MatrixXd oracle = testing::restrict_to(testing::hubbard_oracle(p), idx);
        const auto h = build_hubbard(p);
        EXPECT_LT((h.matrix.real() - oracle).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_EQ(h.matrix.imag().cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(BuildHubbard, UniformLevelsGiveScaledIdentity) {
    DotParameters p;
    p.eps1 = p.eps2 = p.eps3 = 1.7;
    const auto h = build_hubbard(p);
    EXPECT_TRUE(h.matrix.isApprox(3 * 1.7 * MatrixXc::Identity(20, 20), 1e-15));
}

TEST(BuildHubbard, OneElectronTwoLevelOracle) {
    DotParameters p;
    p.eps1 = -0.4;
    p.eps2 = 0.25;
    p.eps3 = 0.9;
    p.t13 = 0.6;
    const auto h = build_hubbard(p, build_basis(1));
    auto values = hermitian_eigensystem(h.matrix).values;
    const double mid = 0.5 * (p.eps1 + p.eps3);
    const double r = std::sqrt(0.25 * (p.eps1 - p.eps3) * (p.eps1 - p.eps3) + p.t13 * p.t13);
    std::vector<double> expected{mid - r, mid - r, p.eps2, p.eps2, mid + r, mid + r};
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(values.size(), 6);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(values(i), expected[static_cast<std::size_t>(i)], 1e-13);
}

TEST(BuildHubbard, PolarizedStateEigenvalue) {
    const auto p = silicon_set(0.9, 1.2);
    const auto basis = build_basis(3);
    const auto h = build_hubbard(p, basis);
    const auto pos = static_cast<Eigen::Index>(*basis.index_of(FockState::from_bits(0b010101)));
    VectorXc v = VectorXc::Zero(20);
    v(pos) = 1.0;
    const double expected = p.eps1 + p.eps2 + p.eps3 + p.U12 + p.U13 + p.U23 - p.Je12 - p.Je13 - p.Je23;
    EXPECT_NEAR(expected, 12.15, 1e-12);
    EXPECT_LT((h.matrix * v - expected * v).norm(), 1e-13);
}

TEST(BuildHubbard, RequiresFixedParticleNumber) {
    EXPECT_THROW(build_hubbard(silicon_set(), build_basis()), SectorError);
}

TEST(BuildHubbard, RejectsNegativeCoulomb) {
    auto p = silicon_set();
    p.U13 = -1.0;
    EXPECT_THROW(build_hubbard(p), InputError);
}

TEST(BuildHubbard, HermitianForRandomParameters) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = build_hubbard(testing::random_parameters(rng));
        EXPECT_TRUE(h.hermitian);
        EXPECT_LE(hermiticity_defect(h.matrix), 1e-12);
    }
}

TEST(BuildHubbard, AffineInEveryField) {
    const auto base = silicon_set(0.7, 0.9);
    for (const auto& [name, field] : dot_parameter_fields()) {
        auto at = [&](double delta) {
            auto p = base;
            p.*field += delta;
            return build_hubbard(p).matrix;
        };
        const MatrixXc h0 = at(0.0);
        const MatrixXc d1 = (at(0.1) - h0) / 0.1;
        const MatrixXc d2 = (at(0.4) - h0) / 0.4;
        EXPECT_LT((d1 - d2).cwiseAbs().maxCoeff(), 1e-10) << name;
    }
}

TEST(BuildHubbard, AllOrbitalJtReadingBreaksSpinSymmetry) {
    HubbardOptions all;
    all.jt_summation = JtSummation::all_orbitals;
    const auto basis = build_basis(3);
    const auto spin = spin_operators(basis);
    const auto h = build_hubbard(silicon_set(1.0, 1.0), basis, all);
    EXPECT_GT(commutator(h.matrix, spin.s2.matrix).norm(), 1e-3);
}

TEST(ExactSpectrum, TwoByTwo) {
    MatrixXc m(2, 2);
    m << 0, 1, 1, 0;
    HermitianOperator op;
    op.matrix = m;
    op.hermitian = true;
    const auto s = exact_spectrum(op);
    EXPECT_NEAR(s.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
    EXPECT_TRUE(s.spin.empty());
}

double single_occupancy_weight(const FockBasis& basis, const MatrixXc& vectors, Eigen::Index n) {
    double weight = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (occupancy_of(basis.state_at(i)) == single_occupancy)
            weight += std::norm(vectors(static_cast<Eigen::Index>(i), n));
    return weight;
}

TEST(ExactSpectrum, SingleOccupancyStatesLieLowestWhenHierarchyHolds) {
    // U12 below U1, U2 puts every double occupancy at least ~4 meV above (111).
    auto p = silicon_set(0.0, 0.0);
    p.U12 = 5.0;
    for (const auto& occ : {occ_012, occ_102, occ_201, occ_021}) ASSERT_GT(config_gap(occ, p), 1.0);
    const auto basis = build_basis(3);
    const auto s = exact_spectrum(build_hubbard(p, basis));
    for (Eigen::Index n = 0; n < 20; ++n) {
        const double w = single_occupancy_weight(basis, s.eigenvectors, n);
        if (n < 8) EXPECT_GT(w, 0.9) << "level " << n;
        else EXPECT_LT(w, 0.1) << "level " << n;
    }
    EXPECT_GT(s.eigenvalues(8) - s.eigenvalues(7), 1.0);
}

TEST(ExactSpectrum, SiliconSetMixesSingleAndDoubleOccupancyAtZeroTunneling) {
    // With U12 = U1 the (201) configuration sits 0.3 meV below (111) and the
    // occupation-modulated hopping mixes them, so the (111) doublets are not
    // the lowest states. Only the quadruplet stays pure.
    const auto basis = build_basis(3);
    const auto s = exact_spectrum(build_hubbard(silicon_set(0.0, 0.0), basis));
    for (Eigen::Index n = 0; n < 4; ++n) EXPECT_NEAR(single_occupancy_weight(basis, s.eigenvectors, n), 1.0, 1e-12);
    EXPECT_LT(single_occupancy_weight(basis, s.eigenvectors, 4), 0.5);
    double total = 0.0;
    for (Eigen::Index n = 0; n < 16; ++n) total += single_occupancy_weight(basis, s.eigenvectors, n);
    EXPECT_NEAR(total, 8.0, 0.01);
}

TEST(ExactSpectrum, InvariantsAndQuadrupletTags) {
    const auto s = exact_spectrum(build_hubbard(silicon_set(1.0, 1.0)));
    const auto n = s.eigenvalues.size();
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
    EXPECT_LT((s.eigenvectors.adjoint() * s.eigenvectors - MatrixXc::Identity(n, n)).norm(), 1e-10);
    EXPECT_LE(s.max_residual, 1e-10 * spectral_norm(build_hubbard(silicon_set(1.0, 1.0)).matrix));

    std::map<int, int> quadruplet_sz;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (s.spin[k] == 1.5) ++quadruplet_sz[s.sz[k].twice];
    }
    // One quadruplet in the N = 3 sector of three orbitals, complete in Sz.
    EXPECT_EQ(quadruplet_sz.size(), 4u);
    for (const auto& [twice, count] : quadruplet_sz) EXPECT_EQ(count, 1) << twice;
}

TEST(ExactSpectrum, QuadrupletInLowEnergyWindow) {
    const auto s = exact_spectrum(build_hubbard(silicon_set(1.0, 1.0)));
    int quadruplets = 0;
    for (Eigen::Index i = 0; i < 8; ++i)
        if (s.spin[static_cast<std::size_t>(i)] == 1.5) ++quadruplets;
    EXPECT_EQ(quadruplets, 4);
}

TEST(SpinOperators, PolarizedSz) {
    const auto basis = build_basis(3);
    const auto spin = spin_operators(basis);
    const auto pos = static_cast<Eigen::Index>(*basis.index_of(FockState::from_bits(0b010101)));
    EXPECT_NEAR(spin.sz.matrix(pos, pos).real(), 1.5, 1e-15);
    EXPECT_NEAR(spin.s2.matrix(pos, pos).real(), 3.75, 1e-15);
}

TEST(SpinOperators, CasimirOnSingleOccupancySubspace) {
    const auto basis = build_basis(3);
    const auto spin = spin_operators(basis);
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (occupancy_of(basis.state_at(i)) == single_occupancy) rows.push_back(static_cast<Eigen::Index>(i));
    ASSERT_EQ(rows.size(), 8u);
    MatrixXc sub(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) sub(r, c) = spin.s2.matrix(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(c)]);
    const auto values = hermitian_eigensystem(sub).values;
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(values(i), 0.75, 1e-13);
    for (int i = 4; i < 8; ++i) EXPECT_NEAR(values(i), 3.75, 1e-13);
}

TEST(SpinOperators, CommuteWithHamiltonian) {
    const auto basis = build_basis(3);
    const auto spin = spin_operators(basis);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const auto h = build_hubbard(testing::random_parameters(rng), basis).matrix;
        const double scale = spectral_norm(h);
        EXPECT_LE(spectral_norm(commutator(h, spin.s2.matrix)), 1e-12 * scale);
        EXPECT_LE(spectral_norm(commutator(h, spin.sz.matrix)), 1e-12 * scale);
    }
}

TEST(SpinOperators, HamiltonianBlockDiagonalInSpinTags) {
    const auto basis = build_basis(3);
    const auto spin = spin_operators(basis);
    const auto tagged = tagged_eigensystem(spin.s2.matrix + 1e-3 * spin.sz.matrix, spin.s2.matrix, spin.sz.matrix);
    const MatrixXc h = build_hubbard(silicon_set(1.1, 0.8), basis).matrix;
    const MatrixXc hb = tagged.vectors.adjoint() * h * tagged.vectors;
    for (Eigen::Index r = 0; r < 20; ++r)
        for (Eigen::Index c = 0; c < 20; ++c) {
            const auto kr = static_cast<std::size_t>(r), kc = static_cast<std::size_t>(c);
            if (tagged.spin[kr] != tagged.spin[kc] || tagged.sz[kr] != tagged.sz[kc])
                EXPECT_LT(std::abs(hb(r, c)), 1e-12);
        }
}

TEST(Hierarchy, SiliconSetHoldsOrdering) {
    const auto r = check_hierarchy(silicon_set(1.0, 1.0));
    EXPECT_TRUE(r.holds());
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Hierarchy, ViolationsWarn) {
    auto p = silicon_set(1.0, 1.0);
    p.U13 = 8.0;  // inter-dot comparable to intra-dot, and U13/U23 far from 1
    const auto r = check_hierarchy(p);
    EXPECT_FALSE(r.holds());
    EXPECT_GE(r.warnings.size(), 2u);
}

} // namespace
} // namespace hqsim
