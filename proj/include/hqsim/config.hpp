// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Device configuration documents (JSON).
 *
 * A config is a flat JSON object whose keys are DotParameters field names
 * (values in meV). The optional keys "J1", "J2", "Jprime" must appear
 * together and replace the derived exchange couplings. Any other key is an
 * error.
 */

#pragma once

#include <hqsim/hubbard.hpp>
#include <hqsim/sweff.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

namespace hqsim {

inline constexpr const char* version = "0.1.0";

using json = nlohmann::json;

struct CouplingOverride {
    double J1 = 0, J2 = 0, Jprime = 0;
    bool operator==(const CouplingOverride&) const = default;
};

struct RunConfig {
    DotParameters params;
    std::optional<CouplingOverride> couplings_override;

    /// Override when given, otherwise the closed-form couplings of `params`.
    EffectiveCouplings couplings(SuperexchangeNormalization norm = SuperexchangeNormalization::conventional) const {
        if (couplings_override)
            return EffectiveCouplings::from(couplings_override->J1, couplings_override->J2, couplings_override->Jprime);
        return effective_couplings(params, norm);
    }

    bool operator==(const RunConfig&) const = default;
};

inline json to_json(const DotParameters& p) {
    json j = json::object();
    for (const auto& [name, field] : dot_parameter_fields()) j[std::string(name)] = p.*field;
    return j;
}

inline json to_json(const RunConfig& c) {
    json j = to_json(c.params);
    if (c.couplings_override) {
        j["J1"] = c.couplings_override->J1;
        j["J2"] = c.couplings_override->J2;
        j["Jprime"] = c.couplings_override->Jprime;
    }
    return j;
}

inline RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw InputError("config must be a JSON object");
    RunConfig cfg;
    std::optional<double> j1, j2, jp;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) throw InputError("config key '" + key + "' must be a number (meV)");
        const double v = value.get<double>();
        if (auto field = find_dot_parameter(key)) {
            cfg.params.*(*field) = v;
        } else if (key == "J1") {
            j1 = v;
        } else if (key == "J2") {
            j2 = v;
        } else if (key == "Jprime") {
            jp = v;
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    const int given = static_cast<int>(j1.has_value()) + static_cast<int>(j2.has_value()) + static_cast<int>(jp.has_value());
    if (given != 0 && given != 3) throw InputError("J1, J2 and Jprime overrides must be given together");
    if (given == 3) cfg.couplings_override = CouplingOverride{*j1, *j2, *jp};
    check_parameters(cfg.params);
    return cfg;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline RunConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

} // namespace hqsim
