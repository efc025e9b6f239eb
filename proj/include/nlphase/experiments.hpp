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

#include <numbers>
#include <vector>

#include "nlphase/errors.hpp"
#include "nlphase/fock.hpp"
#include "nlphase/network.hpp"

namespace nlphase {

/// Sum of an exact outcome distribution must stay this close to one.
inline constexpr double kDistributionSumTol = 1e-10;

/// Reference phases, secret phase bits and reference-arm settings for the
/// N-term protocol. Arm 0 of each fan-out is the unshifted reference arm;
/// arm i (i >= 1) carries theta_i = theta0[i-1] (+ pi when bits[i-1] is set)
/// on the source side and phi[i-1] on the reference side.
class PhaseConfig {
  public:
    PhaseConfig(int n_terms, std::vector<double> theta0, std::vector<bool> bits,
                std::vector<double> phi)
        : n_terms_(n_terms),
          theta0_(std::move(theta0)),
          bits_(std::move(bits)),
          phi_(std::move(phi)) {
        if (n_terms_ < 2) {
            throw std::invalid_argument("PhaseConfig: n_terms must be >= 2");
        }
        const std::size_t want = static_cast<std::size_t>(n_terms_) - 1;
        if (theta0_.size() != want || bits_.size() != want || phi_.size() != want) {
            throw std::invalid_argument(
                "PhaseConfig: theta0, bits and phi must all have length n_terms - 1");
        }
        for (double v : theta0_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("PhaseConfig: non-finite theta0 entry");
            }
        }
        for (double v : phi_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("PhaseConfig: non-finite phi entry");
            }
        }
    }

    int n_terms() const { return n_terms_; }
    const std::vector<double>& theta0() const { return theta0_; }
    const std::vector<bool>& bits() const { return bits_; }
    const std::vector<double>& phi() const { return phi_; }

    /// Source phase on arm i+1: theta0[i] plus pi when the secret bit is set.
    double theta(int i) const {
        return theta0_.at(i) + (bits_.at(i) ? std::numbers::pi : 0.0);
    }

    /// True when every reference arm is tuned to its reference phase,
    /// phi_i = theta_i0 (the setting the binary decoding table assumes).
    bool tuned(double tol = 1e-12) const {
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            if (std::abs(phi_[i] - theta0_[i]) > tol) {
                return false;
            }
        }
        return true;
    }

  private:
    int n_terms_;
    std::vector<double> theta0_;
    std::vector<bool> bits_;
    std::vector<double> phi_;
};

/// A circuit together with the input state it is meant to be driven with.
struct Experiment {
    Circuit circuit;
    FockState input;
};

enum class DetectorModel { number_resolving, threshold };

/// Exact probability over detection patterns. Patterns are occupation
/// vectors over detector ports; under the threshold model they are 0/1
/// click indicators instead of photon counts.
struct OutcomeDistribution {
    int port_count = 0;
    DetectorModel model = DetectorModel::number_resolving;
    std::map<OccupationVector, double> probabilities;

    double probability(const OccupationVector& pattern) const {
        auto it = probabilities.find(pattern);
        return it == probabilities.end() ? 0.0 : it->second;
    }

    double total() const {
        double s = 0.0;
        for (const auto& [pattern, p] : probabilities) {
            s += p;
        }
        return s;
    }
};

/// The two-photon network: the source photon enters port 0, the reference
/// photon port 2. Port map after the splitters (paper labels in quotes):
///   port 0 = detector "1''", port 1 = "2''", port 2 = "3''", port 3 = "4''".
/// The source splits over arms {0, 1} with theta on arm 1; the reference
/// splits over arms {2, 3} with phi on arm 2; arms (2,1) and (0,3) are then
/// recombined, with the minus-marked side on ports 1 and 3 respectively.
inline Experiment build_two_photon_circuit(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("build_two_photon_circuit: phases must be finite");
    }
    Circuit circuit;
    circuit.port_count = 4;
    circuit.elements = {
        BeamSplitter{0, 1}, BeamSplitter{2, 3}, PhaseShifter{1, theta},
        PhaseShifter{2, phi}, BeamSplitter{2, 1}, BeamSplitter{0, 3},
    };
    circuit.port_labels = {"1''", "2''", "3''", "4''"};
    FockState input = create_photon(create_photon(vacuum(4), 0), 2);
    return Experiment{std::move(circuit), std::move(input)};
}

/// Two-photon detection probabilities grouped by coincidence class. The
/// {1'',4''} and {2'',3''} pairs share a splitter and are exactly zero for
/// plane-wave runs; component bundles can populate them.
struct TwoPhotonAggregates {
    double p_same = 0.0;  // both photons at one detector
    double p_13 = 0.0;    // detectors 1'' and 3''
    double p_24 = 0.0;
    double p_12 = 0.0;
    double p_34 = 0.0;
    double p_14 = 0.0;
    double p_23 = 0.0;
};

inline TwoPhotonAggregates coincidence_law(double theta, double phi) {
    const double half_delta = 0.5 * (theta - phi);
    const double c = std::cos(half_delta);
    const double s = std::sin(half_delta);
    TwoPhotonAggregates law;
    law.p_same = 0.5;
    law.p_13 = law.p_24 = 0.25 * c * c;
    law.p_12 = law.p_34 = 0.25 * s * s;
    return law;
}

/// Two-photon coincidence amplitude as the explicit sum over the two
/// indistinguishable pathways, each a product of four 1/sqrt(2) factors
/// with its accumulated signs and phase factors. Independent of compile
/// and evolve; used to cross-check them.
inline Complex path_sum_amplitude(const OccupationVector& outcome, double theta,
                                  double phi) {
    if (outcome.size() != 4) {
        throw std::invalid_argument("path_sum_amplitude: outcome must cover 4 detectors");
    }
    std::vector<int> detectors;
    for (int d = 0; d < 4; ++d) {
        if (outcome[d] < 0 || outcome[d] > 1) {
            throw std::invalid_argument(
                "path_sum_amplitude: outcome is not a two-detector coincidence");
        }
        if (outcome[d] == 1) {
            detectors.push_back(d);
        }
    }
    if (detectors.size() != 2) {
        throw std::invalid_argument(
            "path_sum_amplitude: outcome is not a two-detector coincidence");
    }
    const double h = 0.5;  // (1/sqrt2)^2, two splitter traversals per photon
    const Complex ei_theta = std::polar(1.0, theta);
    const Complex ei_phi = std::polar(1.0, phi);
    // Single-photon amplitude of the source photon (input port 0) to each
    // detector: upper arm to ports {0, 3}, lower arm (theta) to {1, 2} with
    // the sign picked up at the minus-marked combiner side.
    const Complex source[4] = {h, h * ei_theta, -h * ei_theta, h};
    // Reference photon (input port 2): phi arm to ports {1, 2}, plain arm
    // to {0, 3} with a sign on the reflection to port 0.
    const Complex reference[4] = {-h, h * ei_phi, h * ei_phi, h};
    const int i = detectors[0];
    const int j = detectors[1];
    return source[i] * reference[j] + source[j] * reference[i];
}

/// The N-term protocol network over 2N ports. Ports 0..N-1 are the source
/// fan-out arms (photon enters port 0), ports N..2N-1 the reference arms
/// (photon enters port N). Arm i of the source meets arm i of the reference
/// at beam splitter i, with the minus-marked side on the reference port, so
/// after the combiners port i is the source-side detector of splitter i and
/// port N+i its reference-side detector.
inline Experiment build_multiport_circuit(const PhaseConfig& config) {
    const int n = config.n_terms();
    Circuit circuit;
    circuit.port_count = 2 * n;
    std::vector<int> source_ports(n);
    std::vector<int> reference_ports(n);
    for (int i = 0; i < n; ++i) {
        source_ports[i] = i;
        reference_ports[i] = n + i;
    }
    circuit.elements.emplace_back(Multiport{source_ports});
    circuit.elements.emplace_back(Multiport{reference_ports});
    for (int i = 1; i < n; ++i) {
        circuit.elements.emplace_back(PhaseShifter{i, config.theta(i - 1)});
    }
    for (int i = 1; i < n; ++i) {
        circuit.elements.emplace_back(PhaseShifter{n + i, config.phi()[i - 1]});
    }
    for (int i = 0; i < n; ++i) {
        circuit.elements.emplace_back(BeamSplitter{i, n + i});
    }
    for (int i = 0; i < n; ++i) {
        circuit.port_labels.push_back("s" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i) {
        circuit.port_labels.push_back("r" + std::to_string(i));
    }
    FockState input = create_photon(create_photon(vacuum(2 * n), 0), n);
    return Experiment{std::move(circuit), std::move(input)};
}

/// Plane-wave decomposition of the source and reference beams: component c
/// enters with amplitude alpha[c] (source) / beta[c] (reference). Both
/// vectors must be normalized.
struct BundleProfile {
    std::vector<Complex> alpha;
    std::vector<Complex> beta;

    BundleProfile(std::vector<Complex> a, std::vector<Complex> b)
        : alpha(std::move(a)), beta(std::move(b)) {
        if (alpha.empty() || alpha.size() != beta.size()) {
            throw std::invalid_argument(
                "BundleProfile: alpha and beta must be non-empty and equally long");
        }
        if (std::abs(norm_of(alpha) - 1.0) > 1e-12 || std::abs(norm_of(beta) - 1.0) > 1e-12) {
            throw std::invalid_argument("BundleProfile: alpha and beta must have unit norm");
        }
    }

    int components() const { return static_cast<int>(alpha.size()); }

    static double norm_of(const std::vector<Complex>& v) {
        double s = 0.0;
        for (const Complex& c : v) {
            s += std::norm(c);
        }
        return std::sqrt(s);
    }
};

/// Two-photon network with each logical beam carrying K plane-wave
/// components. Port (logical l, component c) = l * K + c; every element of
/// the two-photon circuit acts component-wise, pairing matching component
/// indices, so sub-modes of different components never mix.
inline Experiment build_bundle_circuit(double theta, double phi,
                                       const BundleProfile& profile) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("build_bundle_circuit: phases must be finite");
    }
    const int k = profile.components();
    const auto port = [k](int logical, int component) { return logical * k + component; };
    Circuit circuit;
    circuit.port_count = 4 * k;
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(BeamSplitter{port(0, c), port(1, c)});
    }
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(BeamSplitter{port(2, c), port(3, c)});
    }
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(PhaseShifter{port(1, c), theta});
    }
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(PhaseShifter{port(2, c), phi});
    }
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(BeamSplitter{port(2, c), port(1, c)});
    }
    for (int c = 0; c < k; ++c) {
        circuit.elements.emplace_back(BeamSplitter{port(0, c), port(3, c)});
    }
    // Input (sum_c alpha_c a'_{0,c}) (sum_c beta_c a'_{2,c}) |0>.
    FockState::TermMap terms;
    for (int cs = 0; cs < k; ++cs) {
        for (int cr = 0; cr < k; ++cr) {
            const Complex amp = profile.alpha[cs] * profile.beta[cr];
            if (std::abs(amp) <= kAmplitudePruneTol) {
                continue;
            }
            OccupationVector occ(4 * k, 0);
            occ[port(0, cs)] += 1;
            occ[port(2, cr)] += 1;
            terms[occ] += amp;
        }
    }
    return Experiment{std::move(circuit), FockState(4 * k, std::move(terms))};
}

/// Exact detection statistics: squared amplitudes of the evolved input over
/// all occupation patterns it reaches.
inline OutcomeDistribution outcome_distribution(const Circuit& circuit,
                                                const FockState& input) {
    if (!input.is_normalized()) {
        throw std::invalid_argument("outcome_distribution: input state is not normalized");
    }
    const ModeUnitary u = compile(circuit);
    const FockState out = evolve(input, u);
    OutcomeDistribution dist;
    dist.port_count = circuit.port_count;
    dist.model = DetectorModel::number_resolving;
    for (const auto& [pattern, amp] : out.terms()) {
        dist.probabilities[pattern] = std::norm(amp);
    }
    if (std::abs(dist.total() - 1.0) > kDistributionSumTol) {
        throw internal_error("outcome_distribution: probabilities do not sum to 1");
    }
    return dist;
}

inline std::vector<int> clicked_detectors(const OccupationVector& pattern) {
    std::vector<int> clicked;
    for (int d = 0; d < static_cast<int>(pattern.size()); ++d) {
        if (pattern[d] > 0) {
            clicked.push_back(d);
        }
    }
    return clicked;
}

/// Aggregates a 4-detector distribution (either detector model) into the
/// same-detector probability and the four coincidence classes.
inline TwoPhotonAggregates aggregate_two_photon(const OutcomeDistribution& dist) {
    if (dist.port_count != 4) {
        throw std::invalid_argument("aggregate_two_photon: distribution must have 4 ports");
    }
    TwoPhotonAggregates agg;
    double accounted = 0.0;
    for (const auto& [pattern, p] : dist.probabilities) {
        const std::vector<int> clicked = clicked_detectors(pattern);
        if (clicked.size() == 1) {
            agg.p_same += p;
            accounted += p;
        } else if (clicked.size() == 2) {
            const int a = clicked[0];
            const int b = clicked[1];
            if (a == 0 && b == 2) {
                agg.p_13 += p;
            } else if (a == 1 && b == 3) {
                agg.p_24 += p;
            } else if (a == 0 && b == 1) {
                agg.p_12 += p;
            } else if (a == 2 && b == 3) {
                agg.p_34 += p;
            } else if (a == 0 && b == 3) {
                agg.p_14 += p;
            } else {
                agg.p_23 += p;
            }
            accounted += p;
        }
    }
    if (std::abs(accounted - 1.0) > kDistributionSumTol) {
        throw internal_error("aggregate_two_photon: pattern classes do not sum to 1");
    }
    return agg;
}

struct MultiportAggregates {
    double p_inconclusive = 0.0;  // bunched or same-splitter events
    double p_conclusive = 0.0;    // cross-splitter coincidences
};

inline MultiportAggregates aggregate_multiport(const OutcomeDistribution& dist,
                                               int n_terms) {
    if (dist.port_count != 2 * n_terms) {
        throw std::invalid_argument("aggregate_multiport: port count must be 2 * n_terms");
    }
    MultiportAggregates agg;
    for (const auto& [pattern, p] : dist.probabilities) {
        const std::vector<int> clicked = clicked_detectors(pattern);
        if (clicked.size() == 2 &&
            clicked[0] % n_terms != clicked[1] % n_terms) {
            agg.p_conclusive += p;
        } else {
            agg.p_inconclusive += p;
        }
    }
    return agg;
}

/// Sums a bundle distribution over components: pattern entries of the K
/// sub-modes of each logical port are added, giving the statistics of
/// detectors that cannot resolve components.
inline OutcomeDistribution aggregate_components(const OutcomeDistribution& dist,
                                                int components) {
    if (components < 1 || dist.port_count % components != 0) {
        throw std::invalid_argument(
            "aggregate_components: port count must be a multiple of the component count");
    }
    if (dist.model != DetectorModel::number_resolving) {
        throw std::invalid_argument(
            "aggregate_components: aggregate before applying a threshold model");
    }
    const int logical_ports = dist.port_count / components;
    OutcomeDistribution out;
    out.port_count = logical_ports;
    out.model = dist.model;
    for (const auto& [pattern, p] : dist.probabilities) {
        OccupationVector logical(logical_ports, 0);
        for (int port = 0; port < dist.port_count; ++port) {
            logical[port / components] += pattern[port];
        }
        out.probabilities[logical] += p;
    }
    return out;
}

}  // namespace nlphase
