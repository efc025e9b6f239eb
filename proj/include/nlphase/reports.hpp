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

#include "nlphase/inference.hpp"
#include "nlphase/io.hpp"

namespace nlphase {

/// Exact detection statistics of one configured run. `detector_dist` is
/// what the configured detectors see: logical ports for bundles, click
/// sets under the threshold model. Bundles with more than one component
/// also keep the raw per-component distribution.
struct ExactRun {
    OutcomeDistribution detector_dist;
    std::optional<OutcomeDistribution> component_dist;
    std::optional<TwoPhotonAggregates> two_photon;
    std::optional<MultiportAggregates> multiport;
};

inline Experiment build_experiment(const ExperimentConfig& config) {
    switch (config.setup) {
        case SetupKind::two_photon:
            return build_two_photon_circuit(config.theta, config.phi);
        case SetupKind::multiport:
            return build_multiport_circuit(config.phase_config());
        case SetupKind::bundle:
            return build_bundle_circuit(config.theta, config.phi, *config.profile);
    }
    throw config_error("setup: unknown setup kind");
}

inline ExactRun run_exact(const ExperimentConfig& config) {
    const Experiment experiment = build_experiment(config);
    OutcomeDistribution dist = outcome_distribution(experiment.circuit, experiment.input);
    ExactRun run;
    if (config.setup == SetupKind::bundle) {
        const int components = config.profile->components();
        if (components > 1) {
            run.component_dist = dist;
        }
        dist = aggregate_components(dist, components);
    }
    if (config.detector_model == DetectorModel::threshold) {
        dist = threshold_projection(dist);
    }
    if (config.setup == SetupKind::multiport) {
        run.multiport = aggregate_multiport(dist, config.n_terms);
    } else {
        run.two_photon = aggregate_two_photon(dist);
    }
    run.detector_dist = std::move(dist);
    return run;
}

namespace detail {

inline std::string emit_distribution_entries(const OutcomeDistribution& dist,
                                             const std::string& pad) {
    std::string out = "[";
    bool first = true;
    for (const auto& [pattern, p] : dist.probabilities) {
        out += first ? "" : ",";
        out += "\n" + pad + "  {\"pattern\": " + format_pattern(pattern) +
               ", \"probability\": " + format_double(p) + "}";
        first = false;
    }
    out += "\n" + pad + "]";
    return out;
}

}  // namespace detail

inline std::string emit_exact_report_json(const ExactRun& run) {
    std::string out = "{\n";
    out += "  \"schema_version\": 1,\n";
    out += "  \"port_count\": " + std::to_string(run.detector_dist.port_count) + ",\n";
    out += "  \"detector_model\": \"" +
           std::string(detector_model_name(run.detector_dist.model)) + "\",\n";
    out += "  \"distribution\": " + detail::emit_distribution_entries(run.detector_dist, "  ") +
           ",\n";
    if (run.component_dist.has_value()) {
        out += "  \"component_port_count\": " +
               std::to_string(run.component_dist->port_count) + ",\n";
        out += "  \"component_distribution\": " +
               detail::emit_distribution_entries(*run.component_dist, "  ") + ",\n";
    }
    out += "  \"aggregates\": {";
    if (run.two_photon.has_value()) {
        const TwoPhotonAggregates& a = *run.two_photon;
        out += "\"p_same\": " + format_double(a.p_same);
        out += ", \"p_13\": " + format_double(a.p_13);
        out += ", \"p_24\": " + format_double(a.p_24);
        out += ", \"p_12\": " + format_double(a.p_12);
        out += ", \"p_34\": " + format_double(a.p_34);
        out += ", \"p_14\": " + format_double(a.p_14);
        out += ", \"p_23\": " + format_double(a.p_23);
    } else {
        const MultiportAggregates& a = *run.multiport;
        out += "\"p_inconclusive\": " + format_double(a.p_inconclusive);
        out += ", \"p_conclusive\": " + format_double(a.p_conclusive);
    }
    out += "}\n";
    out += "}\n";
    return out;
}

/// CSV form of the detector-level distribution: one pattern per row.
inline std::string emit_exact_report_csv(const ExactRun& run) {
    std::string out;
    for (int d = 0; d < run.detector_dist.port_count; ++d) {
        out += "d" + std::to_string(d) + ",";
    }
    out += "probability\n";
    for (const auto& [pattern, p] : run.detector_dist.probabilities) {
        for (int v : pattern) {
            out += std::to_string(v) + ",";
        }
        out += format_double(p) + "\n";
    }
    return out;
}

struct SampleRun {
    ExactRun exact;
    ClickRecord record;
};

inline SampleRun run_sample(const ExperimentConfig& config, bool parallel = false) {
    if (!config.n_trials.has_value()) {
        throw config_error("n_trials: required for sample");
    }
    SampleRun run;
    run.exact = run_exact(config);
    run.record = sample(run.exact.detector_dist, *config.n_trials, config.seed, parallel);
    return run;
}

inline std::string emit_sample_report_json(const ExperimentConfig& config,
                                           const SampleRun& run) {
    std::string out = "{\n";
    out += "  \"schema_version\": 1,\n";
    out += "  \"config\": " + emit_config_json(config, "  ") + ",\n";
    out += "  \"record\": " + emit_record_json(run.record, "  ") + ",\n";
    // Empirical frequency of every observed pattern, in canonical order.
    std::map<OccupationVector, long> counts;
    for (const OccupationVector& event : run.record.events) {
        counts[event] += 1;
    }
    out += "  \"empirical\": [";
    bool first = true;
    for (const auto& [pattern, count] : counts) {
        out += first ? "" : ",";
        out += "\n    {\"pattern\": " + format_pattern(pattern) +
               ", \"count\": " + std::to_string(count) + ", \"frequency\": " +
               format_double(static_cast<double>(count) / run.record.n_trials) + "}";
        first = false;
    }
    out += "\n  ]\n";
    out += "}\n";
    return out;
}

struct SampleReport {
    ExperimentConfig config;
    ClickRecord record;
};

inline SampleReport parse_sample_report_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("record file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("config") || !j.contains("record")) {
        throw config_error("record file: expected an object with config and record");
    }
    SampleReport report{parse_experiment_config(j["config"]),
                        parse_click_record(j["record"])};
    return report;
}

/// Validates that two sample reports form a quadrature pair (same
/// two-photon experiment, reference settings phi and phi + pi/2) and runs
/// the phase estimator on them.
inline PhaseEstimate run_estimate(const SampleReport& at_phi,
                                  const SampleReport& at_quadrature) {
    if (at_phi.config.setup != SetupKind::two_photon ||
        at_quadrature.config.setup != SetupKind::two_photon) {
        throw config_error("setup: estimate needs two_photon records");
    }
    if (std::abs(at_phi.config.theta - at_quadrature.config.theta) > 1e-12) {
        throw config_error("theta: the two records were taken at different source phases");
    }
    const double step =
        normalize_angle(at_quadrature.config.phi - at_phi.config.phi -
                        0.5 * std::numbers::pi);
    if (std::abs(step) > 1e-9) {
        throw config_error(
            "phi: the second record must sit a quarter turn (pi/2) above the first");
    }
    return estimate_phase(at_phi.record, at_quadrature.record, at_phi.config.phi);
}

inline std::string emit_estimate_report_json(const PhaseEstimate& est) {
    std::string out = "{\n";
    out += "  \"schema_version\": 1,\n";
    out += "  \"theta_hat\": " + format_double(est.theta_hat) + ",\n";
    out += "  \"std_error\": " + format_double(est.std_error) + ",\n";
    out += "  \"n_conclusive\": " + std::to_string(est.n_conclusive) + ",\n";
    out += "  \"settings\": [\n";
    out += "    {\"phi\": " + format_double(est.phi) +
           ", \"n_a\": " + std::to_string(est.counts_at_phi.n_a) +
           ", \"n_b\": " + std::to_string(est.counts_at_phi.n_b) + "},\n";
    out += "    {\"phi\": " + format_double(normalize_angle(est.phi + 0.5 * std::numbers::pi)) +
           ", \"n_a\": " + std::to_string(est.counts_at_quadrature.n_a) +
           ", \"n_b\": " + std::to_string(est.counts_at_quadrature.n_b) + "}\n";
    out += "  ]\n";
    out += "}\n";
    return out;
}

inline std::string emit_estimate_report_csv(const PhaseEstimate& est) {
    std::string out = "theta_hat,std_error,n_conclusive\n";
    out += format_double(est.theta_hat) + "," + format_double(est.std_error) + "," +
           std::to_string(est.n_conclusive) + "\n";
    return out;
}

/// Exact coincidence aggregates swept over theta at fixed phi.
inline std::string run_sweep_csv(const ExperimentConfig& config, double from, double to,
                                 int points) {
    if (config.setup == SetupKind::multiport) {
        throw config_error("setup: sweep needs a scalar theta (two_photon or bundle)");
    }
    if (points < 1) {
        throw config_error("points: expected an integer >= 1");
    }
    if (!std::isfinite(from) || !std::isfinite(to)) {
        throw config_error("range: sweep bounds must be finite");
    }
    std::string out = "theta,p_same,p_13,p_24,p_12,p_34\n";
    for (int i = 0; i < points; ++i) {
        const double theta =
            points == 1 ? from : from + (to - from) * i / (points - 1);
        ExperimentConfig point = config;
        point.theta = theta;
        const ExactRun run = run_exact(point);
        const TwoPhotonAggregates& a = *run.two_photon;
        out += format_double(theta) + "," + format_double(a.p_same) + "," +
               format_double(a.p_13) + "," + format_double(a.p_24) + "," +
               format_double(a.p_12) + "," + format_double(a.p_34) + "\n";
    }
    return out;
}

/// Inconclusive probability and exact information gain per protocol size.
inline std::string run_info_csv(int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min) {
        throw config_error("n_terms: expected 2 <= n-min <= n-max");
    }
    std::string out = "N,p_inconclusive,mutual_information_bits\n";
    for (int n = n_min; n <= n_max; ++n) {
        const PhaseConfig config(n, std::vector<double>(n - 1, 0.0),
                                 std::vector<bool>(n - 1, false),
                                 std::vector<double>(n - 1, 0.0));
        const Experiment experiment = build_multiport_circuit(config);
        const OutcomeDistribution dist =
            outcome_distribution(experiment.circuit, experiment.input);
        const MultiportAggregates agg = aggregate_multiport(dist, n);
        out += std::to_string(n) + "," + format_double(agg.p_inconclusive) + "," +
               format_double(protocol_information(n)) + "\n";
    }
    return out;
}

}  // namespace nlphase
