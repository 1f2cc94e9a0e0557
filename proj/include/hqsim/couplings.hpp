// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <hqsim/core.hpp>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace hqsim {

/// Electrons per orbital (i, j, k), each in {0, 1, 2}, summing to 3.
struct ConfigurationOccupancy {
    int i = 1, j = 1, k = 1;

    static ConfigurationOccupancy make(int i, int j, int k) {
        ConfigurationOccupancy c{i, j, k};
        if (!c.valid())
            throw InputError("invalid occupancy " + c.label() + ": entries must lie in [0, 2] and sum to 3");
        return c;
    }

    constexpr bool valid() const {
        return i >= 0 && j >= 0 && k >= 0 && i <= 2 && j <= 2 && k <= 2 && i + j + k == 3;
    }

    std::string label() const {
        return "(" + std::to_string(i) + std::to_string(j) + std::to_string(k) + ")";
    }

    constexpr auto operator<=>(const ConfigurationOccupancy&) const = default;
};

inline constexpr ConfigurationOccupancy single_occupancy{1, 1, 1};

/// Exchange couplings of the three-spin model, meV.
struct EffectiveCouplings {
    double J1 = 0;      ///< orbitals 1–3
    double J2 = 0;      ///< orbitals 2–3
    double Jprime = 0;  ///< orbitals 1–2

    /// E_(ijk) − E_(111) for every configuration entering the couplings.
    std::map<ConfigurationOccupancy, double> denominators;
    std::vector<std::string> warnings;

    static EffectiveCouplings from(double j1, double j2, double jprime) {
        EffectiveCouplings c;
        c.J1 = j1;
        c.J2 = j2;
        c.Jprime = jprime;
        return c;
    }
};

} // namespace hqsim
