// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Shared scalar types, physical constants and the error hierarchy.
 *
 * Energies are in meV and times in ps throughout the library.
 */

#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hqsim {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Reduced Planck constant in meV·ps.
inline constexpr double hbar_meV_ps = 0.6582119569;

// ============================================================================
// Errors
// ============================================================================

/// Root of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: bad config, unknown names, out-of-range values.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: non-convergence, singular denominators, broken invariants.
class NumericalError : public Error {
public:
    using Error::Error;
};

class EmptySectorError : public InputError {
public:
    using InputError::InputError;
};

class SectorError : public InputError {
public:
    using InputError::InputError;
};

class ModeRangeError : public InputError {
public:
    using InputError::InputError;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class NormalizationError : public InputError {
public:
    using InputError::InputError;
};

class NonHermitianError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularConfigurationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// ============================================================================
// Half-integer spin projection
// ============================================================================

/// Spin projection stored as twice its value so that ±1/2 stays exact.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    constexpr double value() const { return 0.5 * twice; }
    constexpr auto operator<=>(const HalfInt&) const = default;
};

inline std::string to_string(HalfInt h) {
    if (h.twice % 2 == 0) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

/// max |a_ij - conj(a_ji)|
inline double hermiticity_defect(const MatrixXc& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace hqsim
