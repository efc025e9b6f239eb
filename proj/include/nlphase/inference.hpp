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

#include <cmath>
#include <numbers>
#include <vector>

#include "nlphase/errors.hpp"
#include "nlphase/experiments.hpp"
#include "nlphase/sampling.hpp"

namespace nlphase {

/// Reduces an angle to (-pi, pi].
inline double normalize_angle(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle + std::numbers::pi, two_pi);
    if (a <= 0.0) {
        a += two_pi;
    }
    return a - std::numbers::pi;
}

/// Result of reading one detection event of the N-term protocol.
struct DecodeResult {
    bool conclusive = false;
    int splitter_i = -1;  // lower splitter index of a conclusive pair
    int splitter_j = -1;
    bool xor_bit = false;  // bit_i XOR bit_j, reference arm counted as 0
};

/// Recovers the photon-count pattern behind a threshold click event of a
/// two-photon run: a lone click means both photons hit that detector.
inline OccupationVector expand_threshold_event(const OccupationVector& clicks) {
    const std::vector<int> clicked = clicked_detectors(clicks);
    OccupationVector pattern(clicks.size(), 0);
    if (clicked.size() == 1) {
        pattern[clicked[0]] = 2;
    } else if (clicked.size() == 2) {
        pattern[clicked[0]] = 1;
        pattern[clicked[1]] = 1;
    } else {
        throw std::invalid_argument(
            "expand_threshold_event: expected one or two clicks");
    }
    return pattern;
}

/// Reads one event of the tuned N-term protocol (build_multiport_circuit
/// port layout). Bunched and same-splitter events are inconclusive; a
/// coincidence at splitters i != j is conclusive, and the detector sides
/// give the XOR: both source-side or both reference-side detectors mean
/// bit_i XOR bit_j = 0, mixed sides mean 1.
inline DecodeResult decode_binary(const OccupationVector& event,
                                  const PhaseConfig& config) {
    if (!config.tuned()) {
        throw std::invalid_argument(
            "decode_binary: decoding table assumes phi_i = theta_i0");
    }
    const int n = config.n_terms();
    if (static_cast<int>(event.size()) != 2 * n) {
        throw std::invalid_argument("decode_binary: event must cover 2 * n_terms ports");
    }
    if (total_photons(event) != 2) {
        throw std::invalid_argument("decode_binary: event must hold exactly 2 photons");
    }
    const std::vector<int> clicked = clicked_detectors(event);
    DecodeResult result;
    if (clicked.size() != 2) {
        return result;  // bunched
    }
    const int splitter_a = clicked[0] % n;
    const int splitter_b = clicked[1] % n;
    if (splitter_a == splitter_b) {
        return result;  // both outputs of one splitter
    }
    result.conclusive = true;
    result.splitter_i = std::min(splitter_a, splitter_b);
    result.splitter_j = std::max(splitter_a, splitter_b);
    const bool side_a_source = clicked[0] < n;
    const bool side_b_source = clicked[1] < n;
    result.xor_bit = side_a_source != side_b_source;
    return result;
}

/// Coincidence classes of the two-photon network's detectors:
/// class A = {1'',3''} / {2'',4''} (probability cos^2((theta-phi)/2) / 2),
/// class B = {1'',2''} / {3'',4''} (probability sin^2((theta-phi)/2) / 2).
enum class CoincidenceClass { class_a, class_b, inconclusive };

inline CoincidenceClass classify_two_photon_event(const OccupationVector& event) {
    if (event.size() != 4) {
        throw std::invalid_argument("classify_two_photon_event: expected 4 detectors");
    }
    const std::vector<int> clicked = clicked_detectors(event);
    if (clicked.size() != 2) {
        return CoincidenceClass::inconclusive;
    }
    const int a = clicked[0];
    const int b = clicked[1];
    if ((a == 0 && b == 2) || (a == 1 && b == 3)) {
        return CoincidenceClass::class_a;
    }
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) {
        return CoincidenceClass::class_b;
    }
    return CoincidenceClass::inconclusive;
}

struct ClassCounts {
    long n_a = 0;
    long n_b = 0;

    long conclusive() const { return n_a + n_b; }
};

inline ClassCounts count_coincidence_classes(const ClickRecord& record) {
    ClassCounts counts;
    for (const OccupationVector& event : record.events) {
        switch (classify_two_photon_event(event)) {
            case CoincidenceClass::class_a:
                ++counts.n_a;
                break;
            case CoincidenceClass::class_b:
                ++counts.n_b;
                break;
            case CoincidenceClass::inconclusive:
                break;
        }
    }
    return counts;
}

struct PhaseEstimate {
    double theta_hat = 0.0;   // radians, in (-pi, pi]
    double std_error = 0.0;   // radians
    long n_conclusive = 0;    // conclusive events over both settings
    double phi = 0.0;         // first reference setting
    ClassCounts counts_at_phi;
    ClassCounts counts_at_quadrature;
};

namespace detail {

inline double clamped_binomial_variance(double freq, long n) {
    // Keeps the propagated error positive when a finite sample happens to
    // land exactly on a class boundary.
    const double floor_freq = 1.0 / (static_cast<double>(n) + 2.0);
    const double f = std::min(std::max(freq, floor_freq), 1.0 - floor_freq);
    return f * (1.0 - f) / static_cast<double>(n);
}

}  // namespace detail

/// Quadrature estimate of theta from conclusive-class frequencies at the
/// two reference settings phi and phi + pi/2. The class-A fraction at phi
/// estimates (1 + cos(theta - phi)) / 2 and at quadrature
/// (1 + sin(theta - phi)) / 2, so theta_hat = phi + atan2(s, c).
inline PhaseEstimate estimate_phase_from_frequencies(double freq_a_at_phi,
                                                     long n_at_phi,
                                                     double freq_a_at_quadrature,
                                                     long n_at_quadrature, double phi) {
    if (n_at_phi <= 0 || n_at_quadrature <= 0) {
        throw estimation_error("estimate_phase: no conclusive events at one setting");
    }
    const double c = 2.0 * freq_a_at_phi - 1.0;
    const double s = 2.0 * freq_a_at_quadrature - 1.0;
    const double r_sq = c * c + s * s;
    if (r_sq == 0.0) {
        throw estimation_error(
            "estimate_phase: quadrature frequencies are degenerate (c = s = 0)");
    }
    PhaseEstimate est;
    est.phi = phi;
    est.theta_hat = normalize_angle(phi + std::atan2(s, c));
    const double var_c = 4.0 * detail::clamped_binomial_variance(freq_a_at_phi, n_at_phi);
    const double var_s =
        4.0 * detail::clamped_binomial_variance(freq_a_at_quadrature, n_at_quadrature);
    est.std_error = std::sqrt((s * s * var_c + c * c * var_s) / (r_sq * r_sq));
    return est;
}

inline PhaseEstimate estimate_phase(const ClickRecord& record_at_phi,
                                    const ClickRecord& record_at_quadrature,
                                    double phi) {
    const ClassCounts at_phi = count_coincidence_classes(record_at_phi);
    const ClassCounts at_quad = count_coincidence_classes(record_at_quadrature);
    if (at_phi.conclusive() == 0 || at_quad.conclusive() == 0) {
        throw estimation_error("estimate_phase: no conclusive events at one setting");
    }
    PhaseEstimate est = estimate_phase_from_frequencies(
        static_cast<double>(at_phi.n_a) / at_phi.conclusive(), at_phi.conclusive(),
        static_cast<double>(at_quad.n_a) / at_quad.conclusive(), at_quad.conclusive(),
        phi);
    est.n_conclusive = at_phi.conclusive() + at_quad.conclusive();
    est.counts_at_phi = at_phi;
    est.counts_at_quadrature = at_quad;
    return est;
}

/// Exact mutual information, in bits, between the detection outcome of the
/// tuned N-term protocol and the secret bit configuration, under a uniform
/// prior over all 2^(N-1) configurations. Computed by enumerating the exact
/// joint distribution.
inline double protocol_information(int n_terms, std::vector<double> theta0 = {}) {
    if (n_terms < 2) {
        throw std::invalid_argument("protocol_information: n_terms must be >= 2");
    }
    if (theta0.empty()) {
        theta0.assign(n_terms - 1, 0.0);
    }
    if (static_cast<int>(theta0.size()) != n_terms - 1) {
        throw std::invalid_argument("protocol_information: theta0 must have n_terms - 1 entries");
    }
    const int n_bits = n_terms - 1;
    const std::size_t n_configs = std::size_t{1} << n_bits;
    std::vector<std::map<OccupationVector, double>> conditionals;
    conditionals.reserve(n_configs);
    std::map<OccupationVector, double> marginal;
    const double prior = 1.0 / static_cast<double>(n_configs);
    for (std::size_t mask = 0; mask < n_configs; ++mask) {
        std::vector<bool> bits(n_bits);
        for (int i = 0; i < n_bits; ++i) {
            bits[i] = (mask >> i) & 1;
        }
        const PhaseConfig config(n_terms, theta0, bits, theta0);
        const Experiment experiment = build_multiport_circuit(config);
        OutcomeDistribution dist =
            outcome_distribution(experiment.circuit, experiment.input);
        for (const auto& [pattern, p] : dist.probabilities) {
            marginal[pattern] += prior * p;
        }
        conditionals.push_back(std::move(dist.probabilities));
    }
    double info = 0.0;
    for (const auto& conditional : conditionals) {
        for (const auto& [pattern, p] : conditional) {
            if (p > 0.0) {
                info += prior * p * std::log2(p / marginal.at(pattern));
            }
        }
    }
    return info;
}

}  // namespace nlphase
