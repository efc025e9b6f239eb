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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <variant>
#include <vector>

#include "nlphase/fock.hpp"

namespace nlphase {

/// ||U'U - I||_max tolerance at ModeUnitary construction.
inline constexpr double kUnitarityTol = 1e-10;

/// Square matrix acting on creation operators, row convention:
/// a'_k -> sum_j U(k, j) a'_j, so row k lists the output amplitudes of
/// input mode k. Unitarity is checked at construction.
class ModeUnitary {
  public:
    explicit ModeUnitary(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
        if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
            throw std::invalid_argument("ModeUnitary: matrix must be square and non-empty");
        }
        Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
        gram -= Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols());
        if (gram.cwiseAbs().maxCoeff() > kUnitarityTol) {
            throw std::invalid_argument("ModeUnitary: matrix is not unitary");
        }
    }

    int dimension() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Complex operator()(int in, int out) const { return entries_(in, out); }

  private:
    Eigen::MatrixXcd entries_;
};

/// The paper's real 50-50 convention: (1/sqrt2) [[1, 1], [-1, 1]].
/// The second row carries the -1, so the second port of a BeamSplitter
/// element is the minus-marked side (reflection with a pi phase shift).
inline ModeUnitary beam_splitter_matrix() {
    Eigen::MatrixXcd u(2, 2);
    const double s = 1.0 / std::numbers::sqrt2;
    u << s, s, -s, s;
    return ModeUnitary(u);
}

inline ModeUnitary phase_shifter_matrix(double phase) {
    if (!std::isfinite(phase)) {
        throw std::invalid_argument("phase_shifter_matrix: phase must be finite");
    }
    Eigen::MatrixXcd u(1, 1);
    u(0, 0) = std::polar(1.0, phase);
    return ModeUnitary(u);
}

/// Symmetric n-port splitter, realized as the discrete Fourier matrix
/// U(j, k) = exp(2 pi i j k / n) / sqrt(n). Every entry has modulus
/// 1/sqrt(n), so each input spreads uniformly over all outputs.
inline ModeUnitary symmetric_multiport_matrix(int n) {
    if (n < 2) {
        throw std::invalid_argument("symmetric_multiport_matrix: need n >= 2");
    }
    Eigen::MatrixXcd u(n, n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            // Reduce j*k mod n first so the angle stays small and exact.
            const long prod = static_cast<long>(j) * k % n;
            u(j, k) = std::polar(inv_sqrt_n, 2.0 * std::numbers::pi * prod / n);
        }
    }
    return ModeUnitary(u);
}

/// 50-50 beam splitter between two ports; port_b is the minus-marked side.
struct BeamSplitter {
    int port_a = 0;
    int port_b = 0;
};

struct PhaseShifter {
    int port = 0;
    double phase = 0.0;  // radians, stored exactly
};

/// Symmetric multiport over the listed ports, in listed order.
struct Multiport {
    std::vector<int> ports;
};

/// Arbitrary unitary placed on the listed ports.
struct RawElement {
    Eigen::MatrixXcd unitary;
    std::vector<int> ports;
};

using CircuitElement = std::variant<BeamSplitter, PhaseShifter, Multiport, RawElement>;

/// Ordered sequence of elements over a fixed port range. Elements earlier
/// in the list act on the light first.
struct Circuit {
    int port_count = 0;
    std::vector<CircuitElement> elements;
    std::vector<std::string> port_labels;  // optional; empty or one per port
};

inline std::vector<int> element_ports(const CircuitElement& element) {
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
        return {bs->port_a, bs->port_b};
    }
    if (const auto* ps = std::get_if<PhaseShifter>(&element)) {
        return {ps->port};
    }
    if (const auto* mp = std::get_if<Multiport>(&element)) {
        return mp->ports;
    }
    return std::get<RawElement>(element).ports;
}

inline ModeUnitary element_matrix(const CircuitElement& element) {
    if (std::holds_alternative<BeamSplitter>(element)) {
        return beam_splitter_matrix();
    }
    if (const auto* ps = std::get_if<PhaseShifter>(&element)) {
        return phase_shifter_matrix(ps->phase);
    }
    if (const auto* mp = std::get_if<Multiport>(&element)) {
        return symmetric_multiport_matrix(static_cast<int>(mp->ports.size()));
    }
    return ModeUnitary(std::get<RawElement>(element).unitary);
}

/// Element matrix placed on its ports, identity on all other ports.
inline ModeUnitary embed(const CircuitElement& element, int port_count) {
    const std::vector<int> ports = element_ports(element);
    std::set<int> seen;
    for (int p : ports) {
        if (p < 0 || p >= port_count) {
            throw std::invalid_argument("embed: element port out of range");
        }
        if (!seen.insert(p).second) {
            throw std::invalid_argument("embed: element ports must be distinct");
        }
    }
    const ModeUnitary block = element_matrix(element);
    if (block.dimension() != static_cast<int>(ports.size())) {
        throw std::invalid_argument("embed: element dimension does not match its port list");
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(port_count, port_count);
    for (std::size_t r = 0; r < ports.size(); ++r) {
        for (std::size_t c = 0; c < ports.size(); ++c) {
            u(ports[r], ports[c]) = block(static_cast<int>(r), static_cast<int>(c));
        }
    }
    return ModeUnitary(std::move(u));
}

/// Ordered product of the embedded element matrices, earliest element
/// applied first. With the row convention this is the left-to-right
/// product U_1 U_2 ... U_n.
inline ModeUnitary compile(const Circuit& circuit) {
    if (circuit.port_count < 1) {
        throw std::invalid_argument("compile: circuit needs at least one port");
    }
    if (!circuit.port_labels.empty() &&
        static_cast<int>(circuit.port_labels.size()) != circuit.port_count) {
        throw std::invalid_argument("compile: port_labels must be empty or one per port");
    }
    Eigen::MatrixXcd u =
        Eigen::MatrixXcd::Identity(circuit.port_count, circuit.port_count);
    for (const CircuitElement& element : circuit.elements) {
        u = u * embed(element, circuit.port_count).entries();
    }
    return ModeUnitary(std::move(u));
}

namespace detail {

inline double occupation_factorial(const OccupationVector& occ) {
    double f = 1.0;
    for (int n : occ) {
        for (int k = 2; k <= n; ++k) {
            f *= k;
        }
    }
    return f;
}

inline void enumerate_occupations_rec(int mode, int remaining, OccupationVector& occ,
                                      std::vector<OccupationVector>& out) {
    if (mode == static_cast<int>(occ.size()) - 1) {
        occ[mode] = remaining;
        out.push_back(occ);
        occ[mode] = 0;
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        occ[mode] = n;
        enumerate_occupations_rec(mode + 1, remaining - n, occ, out);
    }
    occ[mode] = 0;
}

/// All occupation vectors of `modes` modes holding exactly `photons`
/// photons, in lexicographic order.
inline void enumerate_occupations(int modes, int photons,
                                  std::vector<OccupationVector>& out) {
    OccupationVector occ(modes, 0);
    enumerate_occupations_rec(0, photons, occ, out);
}

}  // namespace detail

/// Permanent by direct enumeration over all permutations. Intended for the
/// few-photon matrices that arise here (size <= 4 or so).
inline Complex permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("permanent: matrix must be square");
    }
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        return Complex{1.0, 0.0};
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = i;
    }
    Complex sum{0.0, 0.0};
    do {
        Complex prod{1.0, 0.0};
        for (int r = 0; r < n; ++r) {
            prod *= m(r, perm[r]);
        }
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

/// Evolves a Fock state through a passive network by rewriting each
/// creation operator a'_k as sum_j U(k, j) a'_j and expanding the
/// resulting operator polynomial term by term.
inline FockState evolve(const FockState& state, const ModeUnitary& u) {
    const int m = state.mode_count();
    if (m != u.dimension()) {
        throw std::invalid_argument("evolve: state and unitary dimensions differ");
    }
    FockState::TermMap result;
    for (const auto& [occ, amp] : state.terms()) {
        // |occ> = prod_k (a'_k)^{n_k} / sqrt(n_k!) |0>; carry the monomial
        // coefficients in a map while substituting one operator at a time.
        std::map<OccupationVector, Complex> poly;
        poly[OccupationVector(m, 0)] = amp / std::sqrt(detail::occupation_factorial(occ));
        for (int k = 0; k < m; ++k) {
            for (int rep = 0; rep < occ[k]; ++rep) {
                std::map<OccupationVector, Complex> next;
                for (const auto& [mono, coeff] : poly) {
                    for (int j = 0; j < m; ++j) {
                        const Complex w = u(k, j);
                        if (std::abs(w) == 0.0) {
                            continue;
                        }
                        OccupationVector raised = mono;
                        raised[j] += 1;
                        next[raised] += coeff * w;
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto& [mono, coeff] : poly) {
            result[mono] += coeff * std::sqrt(detail::occupation_factorial(mono));
        }
    }
    return FockState(m, std::move(result));
}

/// Same map as evolve, computed through the permanent formula
///   <m|U|n> = Per(U[n, m]) / sqrt(prod n_k! prod m_j!),
/// with U[n, m] repeating row k n_k times and column j m_j times. Kept as
/// an independent verification path for evolve.
inline FockState evolve_oracle(const FockState& state, const ModeUnitary& u) {
    const int modes = state.mode_count();
    if (modes != u.dimension()) {
        throw std::invalid_argument("evolve_oracle: state and unitary dimensions differ");
    }
    FockState::TermMap result;
    std::map<int, std::vector<OccupationVector>> patterns_by_photons;
    for (const auto& [occ, amp] : state.terms()) {
        const int photons = total_photons(occ);
        auto [it, inserted] = patterns_by_photons.try_emplace(photons);
        if (inserted) {
            detail::enumerate_occupations(modes, photons, it->second);
        }
        std::vector<int> rows;
        for (int k = 0; k < modes; ++k) {
            rows.insert(rows.end(), occ[k], k);
        }
        const double in_fact = detail::occupation_factorial(occ);
        for (const OccupationVector& out : it->second) {
            std::vector<int> cols;
            for (int j = 0; j < modes; ++j) {
                cols.insert(cols.end(), out[j], j);
            }
            Eigen::MatrixXcd sub(photons, photons);
            for (int r = 0; r < photons; ++r) {
                for (int c = 0; c < photons; ++c) {
                    sub(r, c) = u(rows[r], cols[c]);
                }
            }
            const Complex transfer =
                permanent(sub) / std::sqrt(in_fact * detail::occupation_factorial(out));
            result[out] += amp * transfer;
        }
    }
    return FockState(modes, std::move(result));
}

}  // namespace nlphase
