// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Fermionic Fock space over six spin-orbital modes.
 *
 * Mode order is fixed as (1↑, 1↓, 2↑, 2↓, 3↑, 3↓); bit m of a FockState is
 * the occupation of mode m. Creation and annihilation carry the sign
 * (-1)^(number of occupied modes with index < m), i.e. Jordan-Wigner on
 * that order.
 */

#pragma once

#include <hqsim/core.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hqsim {

inline constexpr int num_orbitals = 3;
inline constexpr int num_modes = 2 * num_orbitals;
inline constexpr int full_space_dim = 1 << num_modes;

enum class Spin : int { up = 0, down = 1 };

constexpr Spin flipped(Spin s) { return s == Spin::up ? Spin::down : Spin::up; }

/// Mode index of orbital k ∈ {1,2,3} with spin s.
constexpr int mode_index(int orbital, Spin s) {
    return 2 * (orbital - 1) + static_cast<int>(s);
}

// ============================================================================
// FockState
// ============================================================================

struct FockState {
    std::uint8_t bits = 0;

    static constexpr FockState vacuum() { return FockState{0}; }
    static constexpr FockState from_bits(unsigned b) {
        return FockState{static_cast<std::uint8_t>(b & (full_space_dim - 1))};
    }

    constexpr bool occupied(int mode) const { return (bits >> mode) & 1u; }
    constexpr int particle_number() const { return std::popcount(static_cast<unsigned>(bits)); }

    constexpr int n_up() const { return std::popcount(static_cast<unsigned>(bits & 0b010101u)); }
    constexpr int n_down() const { return std::popcount(static_cast<unsigned>(bits & 0b101010u)); }
    constexpr HalfInt sz() const { return HalfInt{n_up() - n_down()}; }

    /// Electrons in orbital k ∈ {1,2,3}.
    constexpr int orbital_occupation(int orbital) const {
        return static_cast<int>(occupied(mode_index(orbital, Spin::up))) +
               static_cast<int>(occupied(mode_index(orbital, Spin::down)));
    }

    /// Parity of occupied modes strictly below `mode`.
    constexpr int sign_below(int mode) const {
        const unsigned lower = bits & ((1u << mode) - 1u);
        return (std::popcount(lower) % 2 == 0) ? 1 : -1;
    }

    constexpr auto operator<=>(const FockState&) const = default;
};

/// Occupations in mode order, e.g. "|110000>".
inline std::string to_string(FockState s) {
    std::string out = "|";
    for (int m = 0; m < num_modes; ++m) out += s.occupied(m) ? '1' : '0';
    return out + ">";
}

struct SignedState {
    int sign = 1;
    FockState state;

    constexpr bool operator==(const SignedState&) const = default;
};

inline void check_mode(int mode) {
    if (mode < 0 || mode >= num_modes)
        throw ModeRangeError("mode index " + std::to_string(mode) + " outside [0, " +
                             std::to_string(num_modes) + ")");
}

/// c†_mode |state>, or nothing when the mode is already occupied.
inline std::optional<SignedState> apply_creation(int mode, FockState state) {
    check_mode(mode);
    if (state.occupied(mode)) return std::nullopt;
    return SignedState{state.sign_below(mode),
                       FockState::from_bits(state.bits | (1u << mode))};
}

/// c_mode |state>, or nothing when the mode is empty.
inline std::optional<SignedState> apply_annihilation(int mode, FockState state) {
    check_mode(mode);
    if (!state.occupied(mode)) return std::nullopt;
    return SignedState{state.sign_below(mode),
                       FockState::from_bits(state.bits & ~(1u << mode))};
}

// ============================================================================
// Operator strings
// ============================================================================

struct ModeOp {
    int mode = 0;
    bool dagger = false;

    constexpr bool operator==(const ModeOp&) const = default;
};

constexpr ModeOp cdag(int orbital, Spin s) { return {mode_index(orbital, s), true}; }
constexpr ModeOp cann(int orbital, Spin s) { return {mode_index(orbital, s), false}; }

/// coefficient × ops[0] ops[1] ... ops[n-1]; the rightmost operator acts first.
struct Term {
    cplx coefficient{1.0, 0.0};
    std::vector<ModeOp> ops;
};

/// n_mode as the string c† c.
inline std::vector<ModeOp> number_string(int orbital, Spin s) {
    return {cdag(orbital, s), cann(orbital, s)};
}

inline std::vector<ModeOp> concat(std::vector<ModeOp> a, const std::vector<ModeOp>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Hermitian conjugate: reverse the string, flip each dagger, conjugate the coefficient.
inline Term adjoint(const Term& t) {
    Term out{std::conj(t.coefficient), {}};
    out.ops.reserve(t.ops.size());
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) out.ops.push_back({it->mode, !it->dagger});
    return out;
}

inline std::optional<SignedState> apply_string(std::span<const ModeOp> ops, FockState state) {
    int sign = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto r = it->dagger ? apply_creation(it->mode, state) : apply_annihilation(it->mode, state);
        if (!r) return std::nullopt;
        sign *= r->sign;
        state = r->state;
    }
    return SignedState{sign, state};
}

// ============================================================================
// FockBasis
// ============================================================================

/// Ordered set of Fock states (ascending bit pattern) with an O(1) index map.
class FockBasis {
public:
    FockBasis() { index_.fill(-1); }

    explicit FockBasis(std::vector<FockState> states,
                       std::optional<int> particle_number = std::nullopt,
                       std::optional<HalfInt> sz = std::nullopt)
        : states_(std::move(states)), particle_number_(particle_number), sz_(sz) {
        std::sort(states_.begin(), states_.end());
        states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
        index_.fill(-1);
        for (std::size_t i = 0; i < states_.size(); ++i) index_[states_[i].bits] = static_cast<int>(i);
        if (!particle_number_ && !states_.empty()) {
            const int n = states_.front().particle_number();
            const bool uniform = std::all_of(states_.begin(), states_.end(),
                                             [n](FockState s) { return s.particle_number() == n; });
            if (uniform) particle_number_ = n;
        }
    }

    std::size_t size() const { return states_.size(); }
    bool empty() const { return states_.empty(); }
    FockState state_at(std::size_t i) const { return states_.at(i); }
    const std::vector<FockState>& states() const { return states_; }

    std::optional<std::size_t> index_of(FockState s) const {
        const int i = index_[s.bits];
        if (i < 0) return std::nullopt;
        return static_cast<std::size_t>(i);
    }
    bool contains(FockState s) const { return index_[s.bits] >= 0; }

    /// Set when every state has the same particle number.
    std::optional<int> particle_number() const { return particle_number_; }
    std::optional<HalfInt> sz() const { return sz_; }

    bool operator==(const FockBasis& o) const { return states_ == o.states_; }

private:
    std::vector<FockState> states_;
    std::array<int, full_space_dim> index_{};
    std::optional<int> particle_number_;
    std::optional<HalfInt> sz_;
};

/**
 * Every 6-bit pattern with the requested particle number and/or Sz, in
 * ascending order. Throws EmptySectorError when the constraints admit no
 * state (e.g. N = 3 with Sz = 1).
 */
inline FockBasis build_basis(std::optional<int> particle_number = std::nullopt,
                             std::optional<HalfInt> sz = std::nullopt) {
    if (particle_number && (*particle_number < 0 || *particle_number > num_modes))
        throw EmptySectorError("particle number " + std::to_string(*particle_number) +
                               " outside [0, 6]");
    std::vector<FockState> states;
    for (unsigned b = 0; b < full_space_dim; ++b) {
        const auto s = FockState::from_bits(b);
        if (particle_number && s.particle_number() != *particle_number) continue;
        if (sz && s.sz() != *sz) continue;
        states.push_back(s);
    }
    if (states.empty()) {
        std::string what = "empty sector:";
        if (particle_number) what += " N=" + std::to_string(*particle_number);
        if (sz) what += " Sz=" + to_string(*sz);
        throw EmptySectorError(what);
    }
    return FockBasis(std::move(states), particle_number, sz);
}

// ============================================================================
// Operators
// ============================================================================

struct AssemblyDiagnostics {
    std::size_t terms = 0;
    /// Nonzero (term, basis state) images that fell outside the basis.
    std::size_t dropped_contributions = 0;
};

/**
 * Dense complex matrix over an explicit basis. `basis` is empty for
 * operators on the three-spin product basis (see spins.hpp).
 */
struct HermitianOperator {
    std::optional<FockBasis> basis;
    MatrixXc matrix;
    bool hermitian = false;
    AssemblyDiagnostics diagnostics;

    Eigen::Index dim() const { return matrix.rows(); }
};

enum class Hermiticity { asserted, unchecked };

inline constexpr double hermiticity_tolerance = 1e-12;

/**
 * Sum of operator strings as a matrix on `basis`. Entry (out, in)
 * accumulates coefficient × sign. Images outside the basis are dropped and
 * counted in the diagnostics. With Hermiticity::asserted the result is
 * checked against its adjoint and NonHermitianError is thrown on failure.
 */
inline HermitianOperator assemble_operator(std::span<const Term> terms, const FockBasis& basis,
                                           Hermiticity mode = Hermiticity::asserted) {
    for (const auto& t : terms)
        for (const auto& op : t.ops) check_mode(op.mode);

    const auto n = static_cast<Eigen::Index>(basis.size());
    HermitianOperator out;
    out.matrix = MatrixXc::Zero(n, n);
    out.diagnostics.terms = terms.size();

    // Sparse triples first, then dense accumulation.
    struct Triple {
        Eigen::Index row, col;
        cplx value;
    };
    std::vector<Triple> triples;
    for (const auto& t : terms) {
        if (t.coefficient == cplx{}) continue;
        for (Eigen::Index col = 0; col < n; ++col) {
            const auto image = apply_string(t.ops, basis.state_at(static_cast<std::size_t>(col)));
            if (!image) continue;
            const auto row = basis.index_of(image->state);
            if (!row) {
                ++out.diagnostics.dropped_contributions;
                continue;
            }
            triples.push_back({static_cast<Eigen::Index>(*row), col,
                               t.coefficient * static_cast<double>(image->sign)});
        }
    }
    for (const auto& tr : triples) out.matrix(tr.row, tr.col) += tr.value;

    out.basis = basis;
    if (mode == Hermiticity::asserted) {
        const double scale = std::max(1.0, n ? out.matrix.cwiseAbs().maxCoeff() : 0.0);
        const double defect = hermiticity_defect(out.matrix);
        if (defect > hermiticity_tolerance * scale)
            throw NonHermitianError("assembled operator is not Hermitian (defect " +
                                    std::to_string(defect) + ")");
        out.hermitian = true;
    }
    return out;
}

inline HermitianOperator assemble_operator(std::initializer_list<Term> terms, const FockBasis& basis,
                                           Hermiticity mode = Hermiticity::asserted) {
    const std::vector<Term> v(terms);
    return assemble_operator(std::span<const Term>(v), basis, mode);
}

} // namespace hqsim
