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

// Traces the two-photon coincidence fringes of the four-detector network
// while scanning the source phase against a fixed reference. The same-side
// class follows cos^2((theta - phi) / 2) / 2, the cross class sin^2, and
// the bunching probability stays pinned at one half.

#include <cstdio>

#include "nlphase/experiments.hpp"

int main() {
    const double phi = 0.0;
    std::printf("# theta  p_same  p_13+p_24  p_12+p_34\n");
    for (int i = 0; i <= 40; ++i) {
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * i / 40;
        const nlphase::Experiment experiment =
            nlphase::build_two_photon_circuit(theta, phi);
        const nlphase::OutcomeDistribution dist =
            nlphase::outcome_distribution(experiment.circuit, experiment.input);
        const nlphase::TwoPhotonAggregates agg = nlphase::aggregate_two_photon(dist);
        std::printf("%+.4f  %.6f  %.6f  %.6f\n", theta, agg.p_same,
                    agg.p_13 + agg.p_24, agg.p_12 + agg.p_34);
    }
    return 0;
}
