// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <gtest/gtest.h>

namespace hqsim {
namespace {

using testing::silicon_set;

/// Superexchange part of each coupling (direct exchange removed).
std::array<double, 3> superexchange(const EffectiveCouplings& c, const DotParameters& p) {
    return {c.J1 + 2.0 * p.Je13, c.J2 + 2.0 * p.Je23, c.Jprime + 2.0 * p.Je12};
}

/// The eight (111) product states as 64-dim vectors built from Kronecker operators.
std::array<Eigen::VectorXd, 8> product_states_full_space() {
    const testing::FullSpaceOps f;
    Eigen::VectorXd vac = Eigen::VectorXd::Zero(64);
    vac(0) = 1.0;
    std::array<Eigen::VectorXd, 8> out;
    for (int idx = 0; idx < 8; ++idx) {
        const int s1 = (idx >> 2) & 1, s2 = (idx >> 1) & 1, s3 = idx & 1;
        out[static_cast<std::size_t>(idx)] = f.cre(1, s1) * (f.cre(2, s2) * (f.cre(3, s3) * vac));
    }
    return out;
}

TEST(ConfigEnergy, HandEvaluatedValues) {
    const auto p = silicon_set();
    EXPECT_NEAR(config_energy(single_occupancy, p), 14.05, 1e-12);
    EXPECT_NEAR(config_energy(occ_012, p), 15.6, 1e-12);
    EXPECT_NEAR(config_gap(occ_012, p), 1.55, 1e-12);
    EXPECT_NEAR(config_gap(occ_102, p), 1.25, 1e-12);
    EXPECT_NEAR(config_gap(occ_201, p), -0.3, 1e-12);
    EXPECT_NEAR(config_gap(occ_021, p), 0.3, 1e-12);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            const int k = 3 - i - j;
            if (k < 0 || k > 2) continue;
            EXPECT_EQ(config_energy(ConfigurationOccupancy::make(i, j, k), DotParameters{}), 0.0);
        }
}

TEST(ConfigEnergy, InvalidOccupancy) {
    EXPECT_THROW(ConfigurationOccupancy::make(3, 0, 0), InputError);
    EXPECT_THROW(ConfigurationOccupancy::make(1, 1, 0), InputError);
    EXPECT_EQ(ConfigurationOccupancy::make(0, 1, 2).label(), "(012)");
}

TEST(ConfigEnergy, MatchesDiagonalOfHubbardWithoutExchange) {
    // Bare configuration energies are the density part of H on any state of that configuration.
    auto p = silicon_set();
    p.Je12 = p.Je13 = p.Je23 = 0.0;
    p.Jt12 = p.Jt13 = p.Jt23 = 0.0;
    const auto basis = build_basis(3);
    const auto h = build_hubbard(p, basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto occ = occupancy_of(basis.state_at(i));
        EXPECT_NEAR(h.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(), config_energy(occ, p),
                    1e-12);
    }
}

TEST(EffectiveCouplings, VanishingSuperexchange) {
    auto p = silicon_set(0.3, 0.8);
    const auto c = effective_couplings(p);
    EXPECT_EQ(c.J1, -2.0 * p.Je13);
}

TEST(EffectiveCouplings, SiliconSetAtUnitTunneling) {
    const auto c = effective_couplings(silicon_set(1.0, 1.0));
    EXPECT_NEAR(c.J1, 4.0 * 0.49 / 1.55 - 1.4, 1e-12);
    EXPECT_NEAR(c.J1, -0.136, 1e-3);
    EXPECT_NEAR(c.J2, 4.0 * 0.49 / 1.25 - 1.4, 1e-12);
    EXPECT_NEAR(c.J2, 0.168, 1e-12);
    EXPECT_NEAR(c.Jprime, -1.0, 1e-12);
    EXPECT_EQ(c.denominators.size(), 4u);
    EXPECT_NEAR(c.denominators.at(occ_201), -0.3, 1e-12);
}

TEST(EffectiveCouplings, JprimeIndependentOfJt12ForSiliconSet) {
    for (double jt : {0.0, 0.3, 0.9}) {
        auto p = silicon_set(1.0, 1.0);
        p.Jt12 = jt;
        EXPECT_NEAR(effective_couplings(p).Jprime, -1.0, 1e-12);
    }
}

TEST(EffectiveCouplings, NegativeDenominatorWarns) {
    const auto c = effective_couplings(silicon_set(1.0, 1.0));
    ASSERT_FALSE(c.warnings.empty());
    bool names_201 = false;
    for (const auto& w : c.warnings) names_201 |= w.find("(201)") != std::string::npos;
    EXPECT_TRUE(names_201);
}

TEST(EffectiveCouplings, ZeroDenominatorNamesConfiguration) {
    auto p = silicon_set(1.0, 1.0);
    p.U1 = 10.1;  // E(201) = E(111)
    try {
        effective_couplings(p);
        FAIL() << "expected SingularConfigurationError";
    } catch (const SingularConfigurationError& e) {
        EXPECT_NE(std::string(e.what()).find("(201)"), std::string::npos);
    }
}

TEST(EffectiveCouplings, ScalingLaw) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = testing::random_parameters(rng);
        const auto base = superexchange(effective_couplings(p), p);
        for (double s : {0.5, 0.25, 1.7}) {
            const auto q = scale_hopping(p, s);
            const auto scaled = superexchange(effective_couplings(q), q);
            for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(scaled[k], s * s * base[k], 1e-12 * (1 + std::abs(base[k])));
        }
    }
}

TEST(EffectiveCouplings, PermutationSymmetry) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = testing::random_parameters(rng);
        auto q = p;
        std::swap(q.eps1, q.eps2);
        std::swap(q.U1, q.U2);
        std::swap(q.U13, q.U23);
        std::swap(q.Je13, q.Je23);
        std::swap(q.Jp13, q.Jp23);
        std::swap(q.Jt13, q.Jt23);
        std::swap(q.t13, q.t23);
        const auto a = effective_couplings(p), b = effective_couplings(q);
        EXPECT_NEAR(a.J1, b.J2, 1e-12);
        EXPECT_NEAR(a.J2, b.J1, 1e-12);
        EXPECT_NEAR(a.Jprime, b.Jprime, 1e-12);
    }
}

TEST(EffectiveCouplings, ProjectorNormalizationIsHalfTheConventionalSuperexchange) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = testing::random_parameters(rng);
        const auto pub = superexchange(effective_couplings(p, SuperexchangeNormalization::conventional), p);
        const auto proj = superexchange(effective_couplings(p, SuperexchangeNormalization::projector), p);
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(proj[k], 0.5 * pub[k], 1e-13);
    }
}

TEST(HeisenbergMatrix, MatchesPauliOracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testing::random_couplings(rng);
        EXPECT_LT((heisenberg_matrix(c) - testing::heisenberg_oracle(c.J1, c.J2, c.Jprime)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(NumericalSw, DiagonalCaseEqualsPhpRestriction) {
    auto p = silicon_set(0.0, 0.0);
    p.Jt12 = p.Jt13 = p.Jt23 = 0.0;
    const auto states = product_states_full_space();
    const Eigen::MatrixXd h = testing::hubbard_oracle(p);
    const auto sw = numerical_sw(p);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const double php = states[static_cast<std::size_t>(a)].dot(h * states[static_cast<std::size_t>(b)]);
            EXPECT_NEAR(sw.matrix(a, b).real(), php, 1e-14);
        }
}

TEST(NumericalSw, SecondOrderTermMatchesKroneckerOracle) {
    // Independent evaluation of PHP − Σ_c PHQ_c HP / ΔE_c on the 64-dim space.
    const auto p = silicon_set(0.7, 1.1);
    const auto states = product_states_full_space();
    const Eigen::MatrixXd h = testing::hubbard_oracle(p);
    Eigen::MatrixXd expected(8, 8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const Eigen::VectorXd ha = h * states[static_cast<std::size_t>(a)];
            const Eigen::VectorXd hb = h * states[static_cast<std::size_t>(b)];
            double v = states[static_cast<std::size_t>(a)].dot(hb);
            for (int bits = 0; bits < 64; ++bits) {
                if (std::popcount(static_cast<unsigned>(bits)) != 3) continue;
                const auto occ = occupancy_of(FockState::from_bits(static_cast<unsigned>(bits)));
                if (occ != occ_012 && occ != occ_102 && occ != occ_201 && occ != occ_021) continue;
                v -= ha(bits) * hb(bits) / config_gap(occ, p);
            }
            expected(a, b) = v;
        }
    EXPECT_LT((numerical_sw(p).matrix.real() - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(NumericalSw, HeisenbergFitReproducesProjectorCouplings) {
    const auto p = silicon_set(0.5, 0.5);
    const auto fit = extract_couplings_from_sw(numerical_sw(p));
    const auto proj = effective_couplings(p, SuperexchangeNormalization::projector);
    EXPECT_TRUE(fit.heisenberg_form);
    EXPECT_NEAR(fit.couplings.J1, proj.J1, 1e-12);
    EXPECT_NEAR(fit.couplings.J2, proj.J2, 1e-12);
    EXPECT_NEAR(fit.couplings.Jprime, proj.Jprime, 1e-12);
    EXPECT_LT(sw_spectral_deviation(p, SuperexchangeNormalization::projector), 1e-12);
}

TEST(NumericalSw, ConventionalNormalizationDisagreementShrinksWithCouplings) {
    const auto p = silicon_set(0.5, 0.5);
    double previous = std::numeric_limits<double>::infinity();
    for (double s : {1.0, 0.5, 0.25}) {
        const double d = sw_spectral_deviation(scale_hopping(p, s), SuperexchangeNormalization::conventional);
        EXPECT_LT(d, previous) << "s = " << s;
        previous = d;
    }
}

TEST(NumericalSw, OuterClassFlagOnlyTouchesJprime) {
    auto p = silicon_set(0.8, 1.2);
    p.U1 = 10.8;  // otherwise the (201) and (021) terms cancel exactly
    SwOptions inner;
    inner.retain_outer_classes = false;
    HermitianOperator diff;
    diff.matrix = numerical_sw(p).matrix - numerical_sw(p, inner).matrix;
    const auto fit = extract_couplings_from_sw(diff);
    EXPECT_TRUE(fit.heisenberg_form);
    EXPECT_NEAR(fit.couplings.J1, 0.0, 1e-12);
    EXPECT_NEAR(fit.couplings.J2, 0.0, 1e-12);
    EXPECT_GT(std::abs(fit.couplings.Jprime), 1e-3);

    auto q = p;
    q.Jt12 = 0.0;
    diff.matrix = numerical_sw(q).matrix - numerical_sw(q, inner).matrix;
    EXPECT_LT(diff.matrix.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(NumericalSw, ZeroGapThrows) {
    auto p = silicon_set(1.0, 1.0);
    p.U1 = 10.1;
    EXPECT_THROW(numerical_sw(p), SingularConfigurationError);
    SwOptions inner;
    inner.retain_outer_classes = false;
    EXPECT_NO_THROW(numerical_sw(p, inner));
}

TEST(HeisenbergFit, PureS1S3) {
    HermitianOperator h;
    h.matrix = 2.0 * testing::dot_oracle(1, 3);
    const auto fit = extract_couplings_from_sw(h);
    EXPECT_NEAR(fit.couplings.J1, 2.0, 1e-14);
    EXPECT_NEAR(fit.couplings.J2, 0.0, 1e-14);
    EXPECT_NEAR(fit.couplings.Jprime, 0.0, 1e-14);
    EXPECT_LT(fit.residual, 1e-13);
    EXPECT_TRUE(fit.heisenberg_form);
}

TEST(HeisenbergFit, RandomMatrixIsNotHeisenberg) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    MatrixXc m(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m(r, c) = cplx{g(rng), g(rng)};
    HermitianOperator h;
    h.matrix = 0.5 * (m + m.adjoint());
    const auto fit = extract_couplings_from_sw(h);
    EXPECT_FALSE(fit.heisenberg_form);
    EXPECT_GT(fit.residual, 1.0);
    h.matrix = MatrixXc::Identity(4, 4);
    EXPECT_THROW(extract_couplings_from_sw(h), DimensionError);
}

} // namespace
} // namespace hqsim
