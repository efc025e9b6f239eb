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

#include "nlphase/inference.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace nlphase;

namespace {

PhaseConfig tuned_config(int n, unsigned bit_mask, std::vector<double> theta0 = {}) {
    if (theta0.empty()) {
        theta0.resize(n - 1);
        for (int i = 0; i < n - 1; ++i) {
            theta0[i] = 0.15 + 0.37 * i;
        }
    }
    std::vector<bool> bits(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        bits[i] = (bit_mask >> i) & 1;
    }
    return PhaseConfig(n, theta0, bits, theta0);
}

/// Entropy-based oracle: I = H(outcome) - sum_c P(c) H(outcome | c).
double information_by_entropies(int n, const std::vector<double>& theta0) {
    const std::size_t n_configs = std::size_t{1} << (n - 1);
    std::map<OccupationVector, double> marginal;
    double conditional_entropy = 0.0;
    for (std::size_t mask = 0; mask < n_configs; ++mask) {
        const PhaseConfig config = tuned_config(n, static_cast<unsigned>(mask), theta0);
        const Experiment experiment = build_multiport_circuit(config);
        const OutcomeDistribution dist =
            outcome_distribution(experiment.circuit, experiment.input);
        double h = 0.0;
        for (const auto& [pattern, p] : dist.probabilities) {
            if (p > 0.0) {
                h -= p * std::log2(p);
                marginal[pattern] += p / static_cast<double>(n_configs);
            }
        }
        conditional_entropy += h / static_cast<double>(n_configs);
    }
    double marginal_entropy = 0.0;
    for (const auto& [pattern, p] : marginal) {
        if (p > 0.0) {
            marginal_entropy -= p * std::log2(p);
        }
    }
    return marginal_entropy - conditional_entropy;
}

}  // namespace

TEST_CASE("decode: cross-splitter coincidence yields the XOR bit") {
    // N=2, bit clear: the event corresponding to the paper's detectors
    // (1'', 3'') is a click at the source-side outputs of both splitters
    // (multiport ports 0 and 1); it decodes conclusively to XOR = 0.
    const PhaseConfig config = tuned_config(2, 0u);
    const DecodeResult result = decode_binary({1, 1, 0, 0}, config);
    REQUIRE(result.conclusive);
    REQUIRE(result.splitter_i == 0);
    REQUIRE(result.splitter_j == 1);
    REQUIRE(result.xor_bit == false);

    const DecodeResult mixed = decode_binary({1, 0, 0, 1}, config);
    REQUIRE(mixed.conclusive);
    REQUIRE(mixed.xor_bit == true);
}

TEST_CASE("decode: bunched events are inconclusive") {
    const PhaseConfig config = tuned_config(2, 1u);
    for (int d = 0; d < 4; ++d) {
        OccupationVector event(4, 0);
        event[d] = 2;
        const DecodeResult result = decode_binary(event, config);
        REQUIRE_FALSE(result.conclusive);
    }
    // Both outputs of one splitter: inconclusive as well.
    REQUIRE_FALSE(decode_binary({1, 0, 1, 0}, config).conclusive);
}

TEST_CASE("decode input validation") {
    const PhaseConfig config = tuned_config(2, 0u);
    REQUIRE_THROWS_AS(decode_binary({1, 0, 0}, config), std::invalid_argument);
    REQUIRE_THROWS_AS(decode_binary({1, 0, 0, 0}, config), std::invalid_argument);
    REQUIRE_THROWS_AS(decode_binary({2, 1, 0, 0}, config), std::invalid_argument);

    const PhaseConfig untuned(2, {0.4}, {false}, {0.9});
    REQUIRE_THROWS_AS(decode_binary({1, 1, 0, 0}, untuned), std::invalid_argument);
}

TEST_CASE("decode agrees with the ground-truth XOR on the full support") {
    for (int n = 2; n <= 5; ++n) {
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            const PhaseConfig config = tuned_config(n, mask);
            const auto bit_of = [&](int arm) {
                return arm == 0 ? false : static_cast<bool>(config.bits()[arm - 1]);
            };
            const Experiment experiment = build_multiport_circuit(config);
            const OutcomeDistribution dist =
                outcome_distribution(experiment.circuit, experiment.input);
            double wrong_probability = 0.0;
            double inconclusive_probability = 0.0;
            for (const auto& [pattern, p] : dist.probabilities) {
                const DecodeResult result = decode_binary(pattern, config);
                if (!result.conclusive) {
                    inconclusive_probability += p;
                    continue;
                }
                const bool truth = bit_of(result.splitter_i) ^ bit_of(result.splitter_j);
                if (result.xor_bit != truth) {
                    wrong_probability += p;
                }
            }
            REQUIRE(wrong_probability <= 1e-12);
            REQUIRE(std::abs(inconclusive_probability - 1.0 / n) <= 1e-12);
        }
    }
}

TEST_CASE("threshold click events expand to decodable patterns") {
    const PhaseConfig config = tuned_config(3, 2u);
    const Experiment experiment = build_multiport_circuit(config);
    const OutcomeDistribution clicks = threshold_projection(
        outcome_distribution(experiment.circuit, experiment.input));
    for (const auto& [click_set, p] : clicks.probabilities) {
        const OccupationVector pattern = expand_threshold_event(click_set);
        REQUIRE(total_photons(pattern) == 2);
        decode_binary(pattern, config);  // must not throw
    }
}

TEST_CASE("noiseless frequencies give back the phase") {
    // theta - phi = 0: class A fraction 1 at phi, 1/2 at quadrature.
    const PhaseEstimate at_zero = estimate_phase_from_frequencies(1.0, 1000, 0.5, 1000, 0.3);
    REQUIRE(at_zero.theta_hat == Catch::Approx(0.3).margin(1e-12));

    // theta - phi = pi/2: c = 0, s = 1.
    const PhaseEstimate quarter = estimate_phase_from_frequencies(0.5, 1000, 1.0, 1000, 0.3);
    REQUIRE(quarter.theta_hat == Catch::Approx(0.3 + 0.5 * std::numbers::pi).margin(1e-12));

    REQUIRE(at_zero.std_error > 0.0);
    REQUIRE(quarter.std_error > 0.0);
}

TEST_CASE("estimator is equivariant under a common phase shift") {
    const double delta = 1.234;
    for (double target : {0.0, 0.7, -2.1}) {
        const double freq_a = 0.5 * (1.0 + std::cos(target));
        const double freq_a_quad = 0.5 * (1.0 + std::sin(target));
        const PhaseEstimate base =
            estimate_phase_from_frequencies(freq_a, 5000, freq_a_quad, 5000, 0.2);
        const PhaseEstimate shifted =
            estimate_phase_from_frequencies(freq_a, 5000, freq_a_quad, 5000, 0.2 + delta);
        REQUIRE(std::abs(normalize_angle(shifted.theta_hat - base.theta_hat - delta)) <=
                1e-12);
    }
}

TEST_CASE("sampled records recover theta within three sigma") {
    const double theta = 0.7;
    const double phi = 0.0;
    const int n = 100000;
    const auto record_at = [&](double setting, std::uint64_t seed) {
        const Experiment experiment = build_two_photon_circuit(theta, setting);
        return sample(outcome_distribution(experiment.circuit, experiment.input), n, seed);
    };
    const ClickRecord at_phi = record_at(phi, 11);
    const ClickRecord at_quad = record_at(phi + 0.5 * std::numbers::pi, 12);
    const PhaseEstimate estimate = estimate_phase(at_phi, at_quad, phi);
    REQUIRE(estimate.n_conclusive > 0);
    REQUIRE(std::abs(normalize_angle(estimate.theta_hat - theta)) <=
            3.0 * estimate.std_error);
    REQUIRE(estimate.std_error <= 0.02);
}

TEST_CASE("estimation failure paths") {
    ClickRecord empty_conclusive;
    empty_conclusive.n_trials = 3;
    empty_conclusive.events = {{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, 2}};
    ClickRecord fine;
    fine.n_trials = 2;
    fine.events = {{1, 0, 1, 0}, {1, 1, 0, 0}};
    REQUIRE_THROWS_AS(estimate_phase(empty_conclusive, fine, 0.0), estimation_error);
    REQUIRE_THROWS_AS(estimate_phase(fine, empty_conclusive, 0.0), estimation_error);

    // Both class fractions exactly 1/2 leave the quadrature pair undefined.
    REQUIRE_THROWS_AS(estimate_phase_from_frequencies(0.5, 100, 0.5, 100, 0.0),
                      estimation_error);
}

TEST_CASE("protocol information equals 1 - 1/N") {
    REQUIRE(protocol_information(2) == Catch::Approx(0.5).margin(1e-9));
    REQUIRE(protocol_information(4) == Catch::Approx(0.75).margin(1e-9));
    REQUIRE(protocol_information(5) == Catch::Approx(0.8).margin(1e-9));
    REQUIRE_THROWS_AS(protocol_information(1), std::invalid_argument);
}

TEST_CASE("protocol information cross-checks against the entropy oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int n = 2; n <= 5; ++n) {
        std::vector<double> theta0(n - 1);
        for (double& v : theta0) {
            v = angle(rng);
        }
        const double direct = protocol_information(n, theta0);
        const double by_entropies = information_by_entropies(n, theta0);
        REQUIRE(direct == Catch::Approx(by_entropies).margin(1e-10));
        REQUIRE(direct == Catch::Approx(1.0 - 1.0 / n).margin(1e-9));
    }
}

TEST_CASE("projection does not change the information gain") {
    // Bunched patterns map one-to-one onto single-click sets and carry no
    // bit dependence, so the mutual information is the same on both
    // alphabets.
    const int n = 3;
    const std::vector<double> theta0 = {0.4, -1.0};
    const std::size_t n_configs = 4;
    std::map<OccupationVector, double> marginal;
    double conditional_entropy = 0.0;
    for (std::size_t mask = 0; mask < n_configs; ++mask) {
        const PhaseConfig config = tuned_config(n, static_cast<unsigned>(mask), theta0);
        const Experiment experiment = build_multiport_circuit(config);
        const OutcomeDistribution clicks = threshold_projection(
            outcome_distribution(experiment.circuit, experiment.input));
        double h = 0.0;
        for (const auto& [pattern, p] : clicks.probabilities) {
            if (p > 0.0) {
                h -= p * std::log2(p);
                marginal[pattern] += p / static_cast<double>(n_configs);
            }
        }
        conditional_entropy += h / static_cast<double>(n_configs);
    }
    double marginal_entropy = 0.0;
    for (const auto& [pattern, p] : marginal) {
        marginal_entropy -= p * std::log2(p);
    }
    const double projected_information = marginal_entropy - conditional_entropy;
    REQUIRE(projected_information ==
            Catch::Approx(protocol_information(n, theta0)).margin(1e-10));
}

TEST_CASE("protocol information grows with N and stays under one bit") {
    double previous = 0.0;
    for (int n = 2; n <= 10; ++n) {
        const double info = protocol_information(n);
        REQUIRE(info > previous);
        REQUIRE(info < 1.0);
        previous = info;
    }
}

TEST_CASE("angle normalization lands in (-pi, pi]") {
    REQUIRE(normalize_angle(std::numbers::pi) == Catch::Approx(std::numbers::pi));
    REQUIRE(normalize_angle(-std::numbers::pi) == Catch::Approx(std::numbers::pi));
    REQUIRE(normalize_angle(3.0 * std::numbers::pi) == Catch::Approx(std::numbers::pi));
    REQUIRE(normalize_angle(0.1 - 4.0 * std::numbers::pi) == Catch::Approx(0.1).margin(1e-12));
}
