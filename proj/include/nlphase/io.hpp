// Copyright 2026 The nlphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "nlphase/experiments.hpp"
#include "nlphase/sampling.hpp"

namespace nlphase {

/// A run configuration failed validation. The message names the field.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// All floating-point output is printed with 17 significant digits so that
/// emitted files round-trip exactly and regress byte-for-byte.
inline std::string format_double(double v) {
    if (v == 0.0) {
        return "0";  // squash negative zero
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_pattern(const OccupationVector& pattern) {
    std::string out = "[";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += std::to_string(pattern[i]);
    }
    out += "]";
    return out;
}

inline const char* detector_model_name(DetectorModel model) {
    return model == DetectorModel::threshold ? "threshold" : "number_resolving";
}

enum class SetupKind { two_photon, multiport, bundle };

inline const char* setup_name(SetupKind setup) {
    switch (setup) {
        case SetupKind::two_photon:
            return "two_photon";
        case SetupKind::multiport:
            return "multiport";
        case SetupKind::bundle:
            return "bundle";
    }
    return "two_photon";
}

/// One experiment run, as read from a config JSON document.
struct ExperimentConfig {
    SetupKind setup = SetupKind::two_photon;
    // two_photon / bundle
    double theta = 0.0;
    double phi = 0.0;
    // multiport
    int n_terms = 0;
    std::vector<double> theta0;
    std::vector<bool> bits;
    std::vector<double> phi_arms;
    // bundle
    std::optional<BundleProfile> profile;

    DetectorModel detector_model = DetectorModel::number_resolving;
    std::optional<int> n_trials;
    std::uint64_t seed = 0;

    PhaseConfig phase_config() const {
        return PhaseConfig(n_terms, theta0, bits, phi_arms);
    }
};

namespace detail {

inline double require_finite_number(const nlohmann::json& j, const std::string& field) {
    if (!j.is_number()) {
        throw config_error(field + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw config_error(field + ": must be finite");
    }
    return v;
}

inline std::vector<double> require_number_array(const nlohmann::json& j,
                                                const std::string& field,
                                                std::size_t want) {
    if (!j.is_array() || j.size() != want) {
        throw config_error(field + ": expected an array of " + std::to_string(want) +
                           " numbers");
    }
    std::vector<double> out;
    out.reserve(want);
    for (const auto& e : j) {
        out.push_back(require_finite_number(e, field));
    }
    return out;
}

inline std::vector<Complex> require_complex_array(const nlohmann::json& j,
                                                  const std::string& field) {
    if (!j.is_array() || j.empty()) {
        throw config_error(field + ": expected a non-empty array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) {
            throw config_error(field + ": each entry must be an [re, im] pair");
        }
        out.emplace_back(require_finite_number(e[0], field), require_finite_number(e[1], field));
    }
    return out;
}

inline void reject_unknown_keys(const nlohmann::json& j,
                                const std::set<std::string>& known,
                                const std::string& context) {
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw config_error(context + key + ": unknown field");
        }
    }
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw config_error("config: expected a JSON object");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1) {
        throw config_error("schema_version: must be the integer 1");
    }
    if (!j.contains("setup") || !j["setup"].is_string()) {
        throw config_error("setup: expected one of two_photon, multiport, bundle");
    }
    ExperimentConfig config;
    const std::string setup = j["setup"].get<std::string>();
    std::set<std::string> known = {"schema_version", "setup", "detector_model",
                                   "n_trials", "seed"};
    if (setup == "two_photon") {
        config.setup = SetupKind::two_photon;
        known.insert({"theta", "phi"});
    } else if (setup == "multiport") {
        config.setup = SetupKind::multiport;
        known.insert({"n_terms", "theta0", "bits", "phi"});
    } else if (setup == "bundle") {
        config.setup = SetupKind::bundle;
        known.insert({"theta", "phi", "profile"});
    } else {
        throw config_error("setup: expected one of two_photon, multiport, bundle");
    }
    detail::reject_unknown_keys(j, known, "");

    if (config.setup == SetupKind::two_photon || config.setup == SetupKind::bundle) {
        if (!j.contains("theta")) {
            throw config_error("theta: required for this setup");
        }
        if (!j.contains("phi")) {
            throw config_error("phi: required for this setup");
        }
        config.theta = detail::require_finite_number(j["theta"], "theta");
        config.phi = detail::require_finite_number(j["phi"], "phi");
    }
    if (config.setup == SetupKind::multiport) {
        if (!j.contains("n_terms") || !j["n_terms"].is_number_integer()) {
            throw config_error("n_terms: expected an integer >= 2");
        }
        config.n_terms = j["n_terms"].get<int>();
        if (config.n_terms < 2) {
            throw config_error("n_terms: expected an integer >= 2");
        }
        const std::size_t want = static_cast<std::size_t>(config.n_terms) - 1;
        if (!j.contains("theta0")) {
            throw config_error("theta0: required for multiport");
        }
        config.theta0 = detail::require_number_array(j["theta0"], "theta0", want);
        if (!j.contains("phi")) {
            throw config_error("phi: required for multiport");
        }
        config.phi_arms = detail::require_number_array(j["phi"], "phi", want);
        if (!j.contains("bits") || !j["bits"].is_array() || j["bits"].size() != want) {
            throw config_error("bits: expected an array of " + std::to_string(want) +
                               " booleans");
        }
        for (const auto& b : j["bits"]) {
            if (!b.is_boolean()) {
                throw config_error("bits: expected an array of booleans");
            }
            config.bits.push_back(b.get<bool>());
        }
    }
    if (config.setup == SetupKind::bundle) {
        if (!j.contains("profile") || !j["profile"].is_object()) {
            throw config_error("profile: required for bundle (object with alpha, beta)");
        }
        const auto& p = j["profile"];
        detail::reject_unknown_keys(p, {"alpha", "beta"}, "profile.");
        if (!p.contains("alpha") || !p.contains("beta")) {
            throw config_error("profile: must contain alpha and beta arrays");
        }
        std::vector<Complex> alpha = detail::require_complex_array(p["alpha"], "profile.alpha");
        std::vector<Complex> beta = detail::require_complex_array(p["beta"], "profile.beta");
        if (alpha.size() != beta.size()) {
            throw config_error("profile.beta: must have the same length as profile.alpha");
        }
        if (std::abs(BundleProfile::norm_of(alpha) - 1.0) > 1e-12) {
            throw config_error("profile.alpha: must have unit norm (within 1e-12)");
        }
        if (std::abs(BundleProfile::norm_of(beta) - 1.0) > 1e-12) {
            throw config_error("profile.beta: must have unit norm (within 1e-12)");
        }
        config.profile.emplace(std::move(alpha), std::move(beta));
    }
    if (j.contains("detector_model")) {
        if (!j["detector_model"].is_string()) {
            throw config_error("detector_model: expected number_resolving or threshold");
        }
        const std::string model = j["detector_model"].get<std::string>();
        if (model == "number_resolving") {
            config.detector_model = DetectorModel::number_resolving;
        } else if (model == "threshold") {
            config.detector_model = DetectorModel::threshold;
        } else {
            throw config_error("detector_model: expected number_resolving or threshold");
        }
    }
    if (j.contains("n_trials")) {
        if (!j["n_trials"].is_number_integer() || j["n_trials"].get<long>() < 1) {
            throw config_error("n_trials: expected an integer >= 1");
        }
        config.n_trials = j["n_trials"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) {
            throw config_error("seed: expected an integer");
        }
        config.seed = j["seed"].get<std::uint64_t>();
    }
    return config;
}

inline ExperimentConfig parse_experiment_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_experiment_config(j);
}

/// Canonical JSON form of a config (fixed key order, 17-digit floats).
inline std::string emit_config_json(const ExperimentConfig& config,
                                    const std::string& indent = "  ") {
    std::string out = "{\n";
    const std::string pad = indent + "  ";
    out += pad + "\"schema_version\": 1,\n";
    out += pad + "\"setup\": \"" + setup_name(config.setup) + "\",\n";
    if (config.setup == SetupKind::two_photon || config.setup == SetupKind::bundle) {
        out += pad + "\"theta\": " + format_double(config.theta) + ",\n";
        out += pad + "\"phi\": " + format_double(config.phi) + ",\n";
    }
    if (config.setup == SetupKind::multiport) {
        out += pad + "\"n_terms\": " + std::to_string(config.n_terms) + ",\n";
        const auto angles = [&](const std::vector<double>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0) {
                    s += ",";
                }
                s += format_double(v[i]);
            }
            return s + "]";
        };
        out += pad + "\"theta0\": " + angles(config.theta0) + ",\n";
        std::string bits = "[";
        for (std::size_t i = 0; i < config.bits.size(); ++i) {
            if (i > 0) {
                bits += ",";
            }
            bits += config.bits[i] ? "true" : "false";
        }
        bits += "]";
        out += pad + "\"bits\": " + bits + ",\n";
        out += pad + "\"phi\": " + angles(config.phi_arms) + ",\n";
    }
    if (config.setup == SetupKind::bundle) {
        const auto complex_array = [&](const std::vector<Complex>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0) {
                    s += ",";
                }
                s += "[" + format_double(v[i].real()) + "," + format_double(v[i].imag()) + "]";
            }
            return s + "]";
        };
        out += pad + "\"profile\": {\"alpha\": " + complex_array(config.profile->alpha) +
               ", \"beta\": " + complex_array(config.profile->beta) + "},\n";
    }
    out += pad + "\"detector_model\": \"" + detector_model_name(config.detector_model) +
           "\",\n";
    if (config.n_trials.has_value()) {
        out += pad + "\"n_trials\": " + std::to_string(*config.n_trials) + ",\n";
    }
    out += pad + "\"seed\": " + std::to_string(config.seed) + "\n";
    out += indent + "}";
    return out;
}

/// ClickRecord as JSON: {"seed", "model", "n_trials", "events"}.
inline std::string emit_record_json(const ClickRecord& record,
                                    const std::string& indent = "  ") {
    std::string out = "{\n";
    const std::string pad = indent + "  ";
    out += pad + "\"seed\": " + std::to_string(record.seed) + ",\n";
    out += pad + "\"model\": \"" + detector_model_name(record.model) + "\",\n";
    out += pad + "\"n_trials\": " + std::to_string(record.n_trials) + ",\n";
    out += pad + "\"events\": [";
    for (int i = 0; i < record.n_trials; ++i) {
        out += i > 0 ? "," : "";
        out += "\n" + pad + "  " + format_pattern(record.events[i]);
    }
    out += "\n" + pad + "]\n";
    out += indent + "}";
    return out;
}

/// ClickRecord as CSV: one event per row, one column per detector.
inline std::string emit_record_csv(const ClickRecord& record, int port_count) {
    std::string out;
    for (int d = 0; d < port_count; ++d) {
        out += (d > 0 ? "," : "") + std::string("d") + std::to_string(d);
    }
    out += "\n";
    for (const OccupationVector& event : record.events) {
        for (std::size_t d = 0; d < event.size(); ++d) {
            out += (d > 0 ? "," : "") + std::to_string(event[d]);
        }
        out += "\n";
    }
    return out;
}

inline ClickRecord parse_click_record(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("seed") || !j.contains("model") ||
        !j.contains("n_trials") || !j.contains("events")) {
        throw config_error("record: expected an object with seed, model, n_trials, events");
    }
    ClickRecord record;
    record.seed = j["seed"].get<std::uint64_t>();
    const std::string model = j["model"].get<std::string>();
    if (model == "number_resolving") {
        record.model = DetectorModel::number_resolving;
    } else if (model == "threshold") {
        record.model = DetectorModel::threshold;
    } else {
        throw config_error("record.model: expected number_resolving or threshold");
    }
    record.n_trials = j["n_trials"].get<int>();
    if (!j["events"].is_array() ||
        static_cast<int>(j["events"].size()) != record.n_trials) {
        throw config_error("record.events: expected n_trials patterns");
    }
    for (const auto& e : j["events"]) {
        if (!e.is_array()) {
            throw config_error("record.events: each event must be an array of counts");
        }
        OccupationVector pattern;
        for (const auto& c : e) {
            pattern.push_back(c.get<int>());
        }
        record.events.push_back(std::move(pattern));
    }
    return record;
}

}  // namespace nlphase
