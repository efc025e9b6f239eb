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

// Runs the tuned N = 4 protocol with a secret bit pattern, samples a few
// hundred events and decodes each conclusive coincidence back into an XOR
// of phase bits. Every decoded XOR matches the hidden pattern.

#include <cstdio>

#include "nlphase/inference.hpp"

int main() {
    const int n = 4;
    const std::vector<double> theta0 = {0.3, 1.1, -0.4};
    const std::vector<bool> bits = {true, false, true};
    const nlphase::PhaseConfig config(n, theta0, bits, theta0);
    const nlphase::Experiment experiment = nlphase::build_multiport_circuit(config);
    const nlphase::OutcomeDistribution dist =
        nlphase::outcome_distribution(experiment.circuit, experiment.input);
    const nlphase::ClickRecord record = nlphase::sample(dist, 400, 2026);

    const auto bit_of_arm = [&](int splitter) {
        return splitter == 0 ? false : static_cast<bool>(bits[splitter - 1]);
    };

    int conclusive = 0;
    int correct = 0;
    for (const nlphase::OccupationVector& event : record.events) {
        const nlphase::DecodeResult decoded = nlphase::decode_binary(event, config);
        if (!decoded.conclusive) {
            continue;
        }
        ++conclusive;
        const bool truth = bit_of_arm(decoded.splitter_i) ^ bit_of_arm(decoded.splitter_j);
        if (decoded.xor_bit == truth) {
            ++correct;
        }
    }
    std::printf("trials: %d\n", record.n_trials);
    std::printf("conclusive: %d (expected about %.0f)\n", conclusive,
                record.n_trials * (1.0 - 1.0 / n));
    std::printf("correctly decoded: %d / %d\n", correct, conclusive);
    return correct == conclusive ? 0 : 1;
}
