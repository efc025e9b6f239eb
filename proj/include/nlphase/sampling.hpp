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

#include <cstdint>
#include <thread>
#include <vector>

#include "nlphase/errors.hpp"
#include "nlphase/experiments.hpp"

namespace nlphase {

// SplitMix64 in counter mode: trial i of a run with seed s draws the single
// uniform variate mix64(s + (i + 1) * 0x9E3779B97F4A7C15). The mix function
// is the SplitMix64 finalizer (Steele, Lea & Flood 2014). Everything is
// unsigned 64-bit arithmetic, so records are identical across platforms and
// independent of execution schedule.

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform variate in [0, 1) for one (seed, counter) pair; 53 mantissa bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t state = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    return static_cast<double>(splitmix64_mix(state) >> 11) * 0x1.0p-53;
}

/// Detection events drawn from an exact distribution. Under the threshold
/// model each event is a 0/1 click indicator instead of photon counts.
struct ClickRecord {
    std::uint64_t seed = 0;
    DetectorModel model = DetectorModel::number_resolving;
    int n_trials = 0;
    std::vector<OccupationVector> events;
};

/// Merges each pattern into the set of detectors that saw at least one
/// photon; probabilities of merged patterns add. Models detectors that are
/// perfectly efficient but cannot tell one photon from two.
inline OutcomeDistribution threshold_projection(const OutcomeDistribution& dist) {
    OutcomeDistribution out;
    out.port_count = dist.port_count;
    out.model = DetectorModel::threshold;
    for (const auto& [pattern, p] : dist.probabilities) {
        OccupationVector clicks(pattern.size(), 0);
        for (std::size_t d = 0; d < pattern.size(); ++d) {
            clicks[d] = pattern[d] > 0 ? 1 : 0;
        }
        out.probabilities[clicks] += p;
    }
    return out;
}

namespace detail {

inline OccupationVector draw(const OutcomeDistribution& dist, double u) {
    // Inverse CDF over the map's lexicographic pattern order.
    double cumulative = 0.0;
    const OccupationVector* last = nullptr;
    for (const auto& [pattern, p] : dist.probabilities) {
        cumulative += p;
        last = &pattern;
        if (u < cumulative) {
            return pattern;
        }
    }
    // u landed in the rounding slack beyond the last cumulative bin.
    return *last;
}

}  // namespace detail

/// Draws n_trials i.i.d. events by inverse CDF over the canonical
/// (lexicographic) pattern order. Trial i depends only on (seed, i), so the
/// record is reproducible and, when parallel is set, identical to the
/// sequential result.
inline ClickRecord sample(const OutcomeDistribution& dist, int n_trials,
                          std::uint64_t seed, bool parallel = false) {
    if (n_trials < 1) {
        throw std::invalid_argument("sample: n_trials must be >= 1");
    }
    if (dist.probabilities.empty()) {
        throw std::invalid_argument("sample: distribution is empty");
    }
    for (const auto& [pattern, p] : dist.probabilities) {
        if (p < 0.0) {
            throw std::invalid_argument("sample: negative probability");
        }
    }
    if (std::abs(dist.total() - 1.0) > kDistributionSumTol) {
        throw std::invalid_argument("sample: distribution does not sum to 1");
    }
    ClickRecord record;
    record.seed = seed;
    record.model = dist.model;
    record.n_trials = n_trials;
    record.events.resize(n_trials);
    const auto fill = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            record.events[i] =
                detail::draw(dist, counter_uniform(seed, static_cast<std::uint64_t>(i)));
        }
    };
    if (!parallel || n_trials < 1024) {
        fill(0, n_trials);
        return record;
    }
    const int workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    const int chunk = (n_trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n_trials, begin + chunk);
        if (begin < end) {
            pool.emplace_back(fill, begin, end);
        }
    }
    for (std::thread& t : pool) {
        t.join();
    }
    return record;
}

}  // namespace nlphase
