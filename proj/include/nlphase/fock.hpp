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
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlphase {

using Complex = std::complex<double>;

/// Photon count per mode. Length must match the mode count of its context.
using OccupationVector = std::vector<int>;

/// Amplitudes with modulus at or below this are dropped from a state.
inline constexpr double kAmplitudePruneTol = 1e-14;
/// |<psi|psi> - 1| tolerance for a state to count as normalized.
inline constexpr double kNormTol = 1e-10;

inline int total_photons(const OccupationVector& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

/// Finite superposition of occupation-number basis states over a fixed set
/// of modes. Immutable value type: every operation returns a new state.
class FockState {
  public:
    using TermMap = std::map<OccupationVector, Complex>;

    explicit FockState(int mode_count) : mode_count_(mode_count) {
        if (mode_count < 1) {
            throw std::invalid_argument("FockState: mode_count must be >= 1");
        }
    }

    FockState(int mode_count, TermMap terms) : FockState(mode_count) {
        for (const auto& [occ, amp] : terms) {
            if (static_cast<int>(occ.size()) != mode_count) {
                throw std::invalid_argument(
                    "FockState: occupation vector length does not match mode_count");
            }
            for (int n : occ) {
                if (n < 0) {
                    throw std::invalid_argument("FockState: negative photon count");
                }
            }
            if (std::abs(amp) > kAmplitudePruneTol) {
                terms_[occ] = amp;
            }
        }
    }

    int mode_count() const { return mode_count_; }
    const TermMap& terms() const { return terms_; }

    Complex amplitude(const OccupationVector& occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& [occ, amp] : terms_) {
            s += std::norm(amp);
        }
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    bool is_normalized(double tol = kNormTol) const {
        return std::abs(norm_squared() - 1.0) <= tol;
    }

    /// Scaled copy with unit norm. Relative phases are preserved.
    FockState normalized() const {
        double n = norm();
        if (n <= kAmplitudePruneTol) {
            throw std::invalid_argument("FockState: cannot normalize a zero state");
        }
        TermMap scaled;
        for (const auto& [occ, amp] : terms_) {
            scaled[occ] = amp / n;
        }
        return FockState(mode_count_, std::move(scaled));
    }

  private:
    int mode_count_;
    TermMap terms_;
};

/// |0...0> over the given number of modes.
inline FockState vacuum(int mode_count) {
    if (mode_count < 1) {
        throw std::invalid_argument("vacuum: mode_count must be >= 1");
    }
    FockState::TermMap terms;
    terms[OccupationVector(mode_count, 0)] = Complex{1.0, 0.0};
    return FockState(mode_count, std::move(terms));
}

/// Applies a creation operator to one mode, with the bosonic sqrt(n+1)
/// factor on every term. The result is generally unnormalized.
inline FockState create_photon(const FockState& state, int mode) {
    if (mode < 0 || mode >= state.mode_count()) {
        throw std::invalid_argument("create_photon: mode index out of range");
    }
    FockState::TermMap raised;
    for (const auto& [occ, amp] : state.terms()) {
        OccupationVector next = occ;
        next[mode] += 1;
        raised[next] += amp * std::sqrt(static_cast<double>(next[mode]));
    }
    return FockState(state.mode_count(), std::move(raised));
}

/// Normalized one-photon state sum_k c_k |1_k> from the given amplitudes.
inline FockState single_photon_superposition(const std::vector<Complex>& amplitudes) {
    if (amplitudes.empty()) {
        throw std::invalid_argument("single_photon_superposition: no amplitudes given");
    }
    double norm_sq = 0.0;
    for (const Complex& c : amplitudes) {
        norm_sq += std::norm(c);
    }
    if (norm_sq <= kAmplitudePruneTol * kAmplitudePruneTol) {
        throw std::invalid_argument("single_photon_superposition: all amplitudes are zero");
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    const int m = static_cast<int>(amplitudes.size());
    FockState::TermMap terms;
    for (int k = 0; k < m; ++k) {
        if (std::abs(amplitudes[k]) == 0.0) {
            continue;
        }
        OccupationVector occ(m, 0);
        occ[k] = 1;
        terms[occ] = amplitudes[k] * inv_norm;
    }
    return FockState(m, std::move(terms));
}

/// <a|b> under orthonormality of occupation basis states.
inline Complex inner_product(const FockState& a, const FockState& b) {
    if (a.mode_count() != b.mode_count()) {
        throw std::invalid_argument("inner_product: mode counts differ");
    }
    Complex s{0.0, 0.0};
    const auto& lhs = a.terms();
    const auto& rhs = b.terms();
    // Walk the smaller map.
    if (lhs.size() <= rhs.size()) {
        for (const auto& [occ, amp] : lhs) {
            auto it = rhs.find(occ);
            if (it != rhs.end()) {
                s += std::conj(amp) * it->second;
            }
        }
    } else {
        for (const auto& [occ, amp] : rhs) {
            auto it = lhs.find(occ);
            if (it != lhs.end()) {
                s += std::conj(it->second) * amp;
            }
        }
    }
    return s;
}

/// Tensor product: modes of `a` first, then modes of `b`.
inline FockState tensor(const FockState& a, const FockState& b) {
    FockState::TermMap terms;
    for (const auto& [occ_a, amp_a] : a.terms()) {
        for (const auto& [occ_b, amp_b] : b.terms()) {
            OccupationVector occ = occ_a;
            occ.insert(occ.end(), occ_b.begin(), occ_b.end());
            terms[occ] += amp_a * amp_b;
        }
    }
    return FockState(a.mode_count() + b.mode_count(), std::move(terms));
}

}  // namespace nlphase
