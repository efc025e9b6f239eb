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

#include "nlphase/fock.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace nlphase;

namespace {

FockState random_state(std::mt19937_64& rng, int modes, int max_photons) {
    std::uniform_int_distribution<int> photon_count(0, max_photons);
    std::uniform_int_distribution<int> mode_pick(0, modes - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    FockState::TermMap terms;
    for (int t = 0; t < 4; ++t) {
        OccupationVector occ(modes, 0);
        const int photons = photon_count(rng);
        for (int p = 0; p < photons; ++p) {
            occ[mode_pick(rng)] += 1;
        }
        terms[occ] += Complex(gauss(rng), gauss(rng));
    }
    FockState state(modes, std::move(terms));
    return state.normalized();
}

}  // namespace

TEST_CASE("vacuum is a single unit-amplitude all-zero term") {
    const FockState v2 = vacuum(2);
    REQUIRE(v2.terms().size() == 1);
    REQUIRE(v2.amplitude({0, 0}) == Complex(1.0, 0.0));

    const FockState v4 = vacuum(4);
    REQUIRE(v4.terms().size() == 1);
    REQUIRE(v4.amplitude({0, 0, 0, 0}) == Complex(1.0, 0.0));

    REQUIRE(vacuum(3).norm() == Catch::Approx(1.0).margin(1e-15));
    REQUIRE_THROWS_AS(vacuum(0), std::invalid_argument);
    REQUIRE_THROWS_AS(vacuum(-3), std::invalid_argument);
}

TEST_CASE("create_photon applies the bosonic ladder factor") {
    const FockState one = create_photon(vacuum(2), 0);
    REQUIRE(one.amplitude({1, 0}) == Complex(1.0, 0.0));

    const FockState two = create_photon(one, 0);
    REQUIRE(two.amplitude({2, 0}).real() == Catch::Approx(std::sqrt(2.0)).margin(1e-15));

    const FockState pair = create_photon(create_photon(vacuum(2), 0), 1);
    REQUIRE(pair.amplitude({1, 1}) == Complex(1.0, 0.0));

    REQUIRE_THROWS_AS(create_photon(vacuum(2), 2), std::invalid_argument);
    REQUIRE_THROWS_AS(create_photon(vacuum(2), -1), std::invalid_argument);
}

TEST_CASE("create_photon on distinct modes commutes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const FockState state = random_state(rng, 3, 2);
        std::uniform_int_distribution<int> mode_pick(0, 2);
        const int i = mode_pick(rng);
        const int j = mode_pick(rng);
        const FockState ij = create_photon(create_photon(state, i), j);
        const FockState ji = create_photon(create_photon(state, j), i);
        for (const auto& [occ, amp] : ij.terms()) {
            REQUIRE(std::abs(amp - ji.amplitude(occ)) < 1e-12);
        }
        REQUIRE(ij.terms().size() == ji.terms().size());
    }
}

TEST_CASE("single_photon_superposition normalizes and keeps relative phases") {
    const double theta = 0.813;
    const FockState lr = single_photon_superposition({Complex(1.0, 0.0), std::polar(1.0, theta)});
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(lr.amplitude({1, 0}) - Complex(inv_sqrt2, 0.0)) < 1e-15);
    REQUIRE(std::abs(lr.amplitude({0, 1}) - std::polar(inv_sqrt2, theta)) < 1e-15);

    const FockState single = single_photon_superposition({1.0, 0.0, 0.0});
    REQUIRE(single.terms().size() == 1);
    REQUIRE(single.amplitude({1, 0, 0}) == Complex(1.0, 0.0));

    const FockState flat = single_photon_superposition({1.0, 1.0, 1.0});
    for (const auto& [occ, amp] : flat.terms()) {
        REQUIRE(amp.real() == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
    }

    REQUIRE_THROWS_AS(single_photon_superposition({0.0, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(single_photon_superposition({}), std::invalid_argument);
}

TEST_CASE("single_photon_superposition terms all hold one photon") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> amps(4);
        for (auto& a : amps) {
            a = Complex(gauss(rng), gauss(rng));
        }
        const FockState state = single_photon_superposition(amps);
        REQUIRE(state.is_normalized());
        for (const auto& [occ, amp] : state.terms()) {
            REQUIRE(total_photons(occ) == 1);
        }
    }
}

TEST_CASE("inner_product uses occupation orthonormality") {
    const FockState a = create_photon(vacuum(2), 0);
    const FockState b = create_photon(vacuum(2), 1);
    REQUIRE(std::abs(inner_product(a, b)) == 0.0);

    std::mt19937_64 rng(3);
    const FockState psi = random_state(rng, 3, 3);
    REQUIRE(std::abs(inner_product(psi, psi) - Complex(1.0, 0.0)) < 1e-12);

    // <(|10> + |01>), (|10> - |01>)> / 2 = 0.
    FockState plus(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}});
    FockState minus(2, {{{1, 0}, 1.0}, {{0, 1}, -1.0}});
    REQUIRE(std::abs(inner_product(plus, minus)) < 1e-15);

    REQUIRE_THROWS_AS(inner_product(vacuum(2), vacuum(3)), std::invalid_argument);
}

TEST_CASE("inner_product is conjugate symmetric") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const FockState a = random_state(rng, 3, 3);
        const FockState b = random_state(rng, 3, 3);
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        REQUIRE(std::abs(ab - std::conj(ba)) < 1e-14);
    }
}

TEST_CASE("tensor concatenates modes and multiplies amplitudes") {
    const FockState one = create_photon(vacuum(1), 0);
    const FockState pair = tensor(one, one);
    REQUIRE(pair.mode_count() == 2);
    REQUIRE(pair.amplitude({1, 1}) == Complex(1.0, 0.0));

    std::mt19937_64 rng(9);
    const FockState psi = random_state(rng, 2, 2);
    const FockState padded = tensor(vacuum(1), psi);
    REQUIRE(padded.mode_count() == 3);
    for (const auto& [occ, amp] : psi.terms()) {
        OccupationVector expected = {0};
        expected.insert(expected.end(), occ.begin(), occ.end());
        REQUIRE(std::abs(padded.amplitude(expected) - amp) < 1e-15);
    }

    const FockState other = random_state(rng, 3, 2);
    REQUIRE(tensor(psi, other).is_normalized());
}

TEST_CASE("construction prunes tiny amplitudes and pruning is idempotent") {
    FockState tiny(2, {{{1, 0}, 1.0}, {{0, 1}, Complex(1e-15, 0.0)}});
    REQUIRE(tiny.terms().size() == 1);
    // Re-running construction over the surviving terms changes nothing.
    FockState again(2, tiny.terms());
    REQUIRE(again.terms() == tiny.terms());
}

TEST_CASE("states validate their occupation vectors") {
    REQUIRE_THROWS_AS(FockState(2, {{{1, 0, 0}, 1.0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(FockState(2, {{{-1, 0}, 1.0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(FockState(2, FockState::TermMap{}).normalized(),
                      std::invalid_argument);
}
