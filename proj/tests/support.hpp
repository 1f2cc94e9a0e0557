// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Independent oracles shared by the test suites. Nothing here goes through
// the library's string/sign machinery: fermion operators are explicit
// Kronecker products and spin operators are built from Pauli matrices.

#pragma once

#include <hqsim/hqsim.hpp>

#include <array>
#include <bit>
#include <random>
#include <vector>

namespace hqsim::testing {

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// 64×64 annihilation matrix for `mode`; basis index = bit pattern, so the
/// most significant Kronecker factor is mode 5. Lower modes carry a Z string.
inline Eigen::MatrixXd jw_annihilator(int mode) {
    Eigen::MatrixXd a(2, 2), z(2, 2), id = Eigen::MatrixXd::Identity(2, 2);
    a << 0, 1, 0, 0;
    z << 1, 0, 0, -1;
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (int m = 5; m >= 0; --m) out = kron(out, m > mode ? id : (m == mode ? a : z));
    return out;
}

struct FullSpaceOps {
    std::array<Eigen::MatrixXd, 6> c;
    FullSpaceOps() {
        for (int m = 0; m < 6; ++m) c[static_cast<std::size_t>(m)] = jw_annihilator(m);
    }
    const Eigen::MatrixXd& ann(int orbital, int spin) const { return c[static_cast<std::size_t>(2 * (orbital - 1) + spin)]; }
    Eigen::MatrixXd cre(int orbital, int spin) const { return ann(orbital, spin).transpose(); }
    Eigen::MatrixXd num(int orbital, int spin) const { return cre(orbital, spin) * ann(orbital, spin); }
};

/// Rows/cols of the N = 3 sector in ascending bit order.
inline std::vector<int> sector_indices(int n) {
    std::vector<int> idx;
    for (int b = 0; b < 64; ++b)
        if (std::popcount(static_cast<unsigned>(b)) == n) idx.push_back(b);
    return idx;
}

inline Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    return out;
}

/// Hubbard Hamiltonian written out with explicit matrix products on the
/// 64-dim space, occupation-modulated hopping restricted to k ∈ {i, j}.
inline Eigen::MatrixXd hubbard_oracle(const DotParameters& p) {
    static const FullSpaceOps f;
    constexpr int up = 0, dn = 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(64, 64);
    const std::array eps{p.eps1, p.eps2, p.eps3};
    const std::array onsite{p.U1, p.U2, p.U3};
    for (int k = 1; k <= 3; ++k) {
        h += eps[k - 1] * (f.num(k, up) + f.num(k, dn));
        h += onsite[k - 1] * f.num(k, up) * f.num(k, dn);
    }
    for (int s = 0; s < 2; ++s) {
        const Eigen::MatrixXd h13 = p.t13 * f.cre(1, s) * f.ann(3, s);
        const Eigen::MatrixXd h23 = p.t23 * f.cre(2, s) * f.ann(3, s);
        h += h13 + h13.transpose() + h23 + h23.transpose();
    }
    struct Pair {
        int i, j;
        double U, Je, Jp, Jt;
    };
    for (const auto& pr : {Pair{1, 3, p.U13, p.Je13, p.Jp13, p.Jt13}, Pair{2, 3, p.U23, p.Je23, p.Jp23, p.Jt23},
                           Pair{1, 2, p.U12, p.Je12, p.Jp12, p.Jt12}}) {
        const int i = pr.i, j = pr.j;
        const Eigen::MatrixXd ni = f.num(i, up) + f.num(i, dn), nj = f.num(j, up) + f.num(j, dn);
        h += pr.U * ni * nj;
        h -= pr.Je * (f.num(i, up) * f.num(j, up) + f.num(i, dn) * f.num(j, dn));
        const Eigen::MatrixXd flip = f.cre(i, dn) * f.cre(j, up) * f.ann(j, dn) * f.ann(i, up);
        h -= pr.Je * (flip + flip.transpose());
        const Eigen::MatrixXd pair = f.cre(j, up) * f.cre(j, dn) * f.ann(i, up) * f.ann(i, dn);
        h -= pr.Jp * (pair + pair.transpose());
        for (int k : {i, j})
            for (int s = 0; s < 2; ++s) {
                const Eigen::MatrixXd bc = f.num(k, s) * f.cre(i, 1 - s) * f.ann(j, 1 - s);
                h -= pr.Jt * (bc + bc.transpose());
            }
    }
    return h;
}

/// Three-spin operators from Pauli matrices; product index = 4[s1↓] + 2[s2↓] + [s3↓].
inline std::array<Eigen::Matrix<cplx, 8, 8>, 3> spin_component(int particle) {
    Eigen::Matrix2cd sx, sy, sz, id = Eigen::Matrix2cd::Identity();
    sx << 0, 0.5, 0.5, 0;
    sy << 0, cplx(0, -0.5), cplx(0, 0.5), 0;
    sz << 0.5, 0, 0, -0.5;
    std::array<Eigen::Matrix<cplx, 8, 8>, 3> out;
    const std::array<Eigen::Matrix2cd, 3> comp{sx, sy, sz};
    for (int a = 0; a < 3; ++a) {
        std::array<Eigen::Matrix2cd, 3> f{id, id, id};
        f[static_cast<std::size_t>(particle - 1)] = comp[static_cast<std::size_t>(a)];
        Eigen::Matrix<cplx, 8, 8> m;
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                m(r, c) = f[0]((r >> 2) & 1, (c >> 2) & 1) * f[1]((r >> 1) & 1, (c >> 1) & 1) * f[2](r & 1, c & 1);
        out[static_cast<std::size_t>(a)] = m;
    }
    return out;
}

inline SpinMatrix dot_oracle(int a, int b) {
    const auto sa = spin_component(a), sb = spin_component(b);
    return sa[0] * sb[0] + sa[1] * sb[1] + sa[2] * sb[2];
}

inline SpinMatrix heisenberg_oracle(double j1, double j2, double jp) {
    return j1 * dot_oracle(1, 3) + j2 * dot_oracle(2, 3) + jp * dot_oracle(1, 2);
}

/// Device parameter set of the silicon example (t13 = t23 = 0), typed in
/// separately from the library's copy.
inline DotParameters silicon_set(double t13 = 0.0, double t23 = 0.0) {
    DotParameters p;
    p.eps1 = 0.0;
    p.eps2 = 0.3;
    p.eps3 = 0.35;
    p.U1 = p.U2 = 9.8;
    p.U3 = 11.0;
    p.U13 = p.U23 = 1.8;
    p.U12 = 9.8;
    p.Jt12 = p.Jt13 = p.Jt23 = 0.3;
    p.Je12 = 0.5;
    p.Je13 = p.Je23 = 0.7;
    p.t13 = t13;
    p.t23 = t23;
    return p;
}

inline DotParameters random_parameters(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DotParameters p;
    for (const auto& [name, field] : dot_parameter_fields()) p.*field = u(rng);
    p.U1 += 8.0;
    p.U2 += 8.0;
    p.U3 += 8.0;
    p.U12 += 5.0;
    p.U13 += 1.0;
    p.U23 += 1.0;
    return p;
}

inline EffectiveCouplings random_couplings(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const double a = u(rng), b = u(rng), c = u(rng);
    return EffectiveCouplings::from(a, b, c);
}

inline QubitState random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    cplx a{g(rng), g(rng)}, b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

} // namespace hqsim::testing
