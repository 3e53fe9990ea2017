// Copyright 2026 The noisetol Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Test-only helpers: a dense 2^n x 2^n matrix oracle built from textbook
// operator identities (Pauli rotations, projectors) rather than the kernel's
// hand-written entries, plus random circuit generators.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "noisetol/noisetol.hpp"

namespace noisetol::test {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline CMat pauli_matrix(char p) {
    CMat m(2, 2);
    switch (p) {
    case 'I':
        m << 1, 0, 0, 1;
        break;
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, cd(0, -1), cd(0, 1), 0;
        break;
    default:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

// exp(-i theta/2 P)
inline CMat rotation(char p, double theta) {
    return std::cos(theta / 2) * pauli_matrix('I') -
           cd(0, 1) * std::sin(theta / 2) * pauli_matrix(p);
}

// Kronecker product with `high` on the more significant local bit.
inline CMat kron(const CMat &high, const CMat &low) {
    CMat out(high.rows() * low.rows(), high.cols() * low.cols());
    for (Eigen::Index i = 0; i < high.rows(); ++i) {
        for (Eigen::Index j = 0; j < high.cols(); ++j) {
            out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) =
                high(i, j) * low;
        }
    }
    return out;
}

/// Local unitary: single-qubit 2x2, or 4x4 on local index bit(op0) + 2 bit(op1).
inline CMat oracle_local(const Gate &g) {
    const double pi = 3.14159265358979323846;
    CMat p0(2, 2), p1(2, 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    switch (g.kind) {
    case GateKind::H:
        return (pauli_matrix('X') + pauli_matrix('Z')) / std::sqrt(2.0);
    case GateKind::X:
        return pauli_matrix('X');
    case GateKind::Y:
        return pauli_matrix('Y');
    case GateKind::Z:
        return pauli_matrix('Z');
    case GateKind::S:
        return p0 + cd(0, 1) * p1;
    case GateKind::T:
        return p0 + std::exp(cd(0, pi / 4)) * p1;
    case GateKind::RX:
        return rotation('X', g.angle);
    case GateKind::RY:
        return rotation('Y', g.angle);
    case GateKind::RZ:
        return rotation('Z', g.angle);
    case GateKind::CX: // control = operand 0 = low local bit
        return kron(pauli_matrix('I'), p0) + kron(pauli_matrix('X'), p1);
    case GateKind::CZ:
        return kron(pauli_matrix('I'), p0) + kron(pauli_matrix('Z'), p1);
    case GateKind::SWAP:
        return 0.5 * (kron(pauli_matrix('I'), pauli_matrix('I')) +
                      kron(pauli_matrix('X'), pauli_matrix('X')) +
                      kron(pauli_matrix('Y'), pauli_matrix('Y')) +
                      kron(pauli_matrix('Z'), pauli_matrix('Z')));
    case GateKind::U1Q:
    case GateKind::U2Q: {
        const auto dim = static_cast<Eigen::Index>(g.kind == GateKind::U1Q ? 2 : 4);
        CMat m(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                m(r, c) = g.matrix[static_cast<std::size_t>(r * dim + c)];
            }
        }
        return m;
    }
    }
    return {};
}

/// Embeds a local operator on `ops` into the full little-endian space.
inline CMat embed(const CMat &local, const std::vector<std::size_t> &ops,
                  std::size_t width) {
    const std::size_t dim = std::size_t{1} << width;
    std::size_t mask = 0;
    for (auto q : ops) {
        mask |= std::size_t{1} << q;
    }
    auto local_index = [&](std::size_t i) {
        std::size_t l = 0;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            l |= ((i >> ops[k]) & 1U) << k;
        }
        return l;
    };
    CMat full = CMat::Zero(static_cast<Eigen::Index>(dim),
                           static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & ~mask) == (j & ~mask)) {
                full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    local(static_cast<Eigen::Index>(local_index(i)),
                          static_cast<Eigen::Index>(local_index(j)));
            }
        }
    }
    return full;
}

inline CMat oracle_gate(const Gate &g, std::size_t width) {
    std::vector<std::size_t> ops(g.operands().begin(), g.operands().end());
    return embed(oracle_local(g), ops, width);
}

inline CMat oracle_pauli(Pauli p, std::size_t qubit, std::size_t width) {
    return embed(pauli_matrix(pauli_name(p)), {qubit}, width);
}

inline CVec oracle_zero(std::size_t width) {
    CVec v = CVec::Zero(static_cast<Eigen::Index>(std::size_t{1} << width));
    v(0) = 1;
    return v;
}

/// Full unitary product of a circuit with injected faults.
inline CVec oracle_run(const Circuit &c, const Injections &inj = {}) {
    CVec v = oracle_zero(c.width);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        v = oracle_gate(c.gates[i], c.width) * v;
        if (auto it = inj.find(i); it != inj.end()) {
            for (const auto &f : it->second) {
                v = oracle_pauli(f.pauli, f.qubit, c.width) * v;
            }
        }
    }
    return v;
}

inline double max_deviation(const StateVector &s, const CVec &v) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        worst = std::max(worst, std::abs(s[k] - v(static_cast<Eigen::Index>(k))));
    }
    return worst;
}

/// Fidelity up to global phase, computed from oracle vectors.
inline double overlap_sq(const CVec &a, const CVec &b) {
    return std::norm(a.dot(b));
}

/// Criterion score from oracle vectors, written from the definitions.
inline double oracle_score(const SuccessCriterion &crit, const CVec &ref,
                           const CVec &test) {
    if (std::holds_alternative<Fidelity>(crit)) {
        return overlap_sq(ref, test);
    }
    if (const auto *co = std::get_if<CorrectOutcome>(&crit)) {
        std::size_t k = 0;
        for (char ch : co->bits) {
            k = 2 * k + static_cast<std::size_t>(ch == '1');
        }
        return std::norm(test(static_cast<Eigen::Index>(k)));
    }
    std::vector<double> probs(static_cast<std::size_t>(ref.size()));
    for (Eigen::Index k = 0; k < ref.size(); ++k) {
        probs[static_cast<std::size_t>(k)] = std::norm(ref(k));
    }
    auto sorted = probs;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    const double median = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
    double mass = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (probs[k] > median) {
            mass += std::norm(test(static_cast<Eigen::Index>(k)));
        }
    }
    return mass;
}

/// Exact expected criterion under independent per-location Pauli faults:
/// sums over all 4^L fault patterns. Only for tiny circuits.
inline double oracle_expected_success(const Circuit &c, const ErrorRates &r,
                                      const SuccessCriterion &crit) {
    std::vector<std::pair<std::size_t, std::size_t>> locs; // (gate, qubit)
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        for (auto q : c.gates[i].operands()) {
            locs.emplace_back(i, q);
        }
    }
    const CVec ref = oracle_run(c);
    const double none = 1.0 - r.p_x - r.p_z - r.p_y;
    const double weight[4] = {none, r.p_x, r.p_z, r.p_y};
    const Pauli kinds[4] = {Pauli::X, Pauli::X, Pauli::Z, Pauli::Y};
    std::size_t patterns = 1;
    for (std::size_t l = 0; l < locs.size(); ++l) {
        patterns *= 4;
    }
    double total = 0.0;
    for (std::size_t code = 0; code < patterns; ++code) {
        Injections inj;
        double w = 1.0;
        std::size_t rest = code;
        for (const auto &[gate, qubit] : locs) {
            const auto digit = rest % 4;
            rest /= 4;
            w *= weight[digit];
            if (digit != 0) {
                inj[gate].push_back({kinds[digit], qubit});
            }
        }
        if (w != 0.0) {
            total += w * oracle_score(crit, ref, oracle_run(c, inj));
        }
    }
    return total;
}

inline std::vector<Complex> random_unitary2(Rng &rng) {
    // Euler decomposition with a random global phase
    const double a = 6.283185307179586 * rng.uniform();
    const double b = 6.283185307179586 * rng.uniform();
    const double c = 6.283185307179586 * rng.uniform();
    const double d = 6.283185307179586 * rng.uniform();
    const CMat u = std::exp(cd(0, d)) * rotation('Z', a) * rotation('Y', b) *
                   rotation('Z', c);
    return {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
}

/// Random circuit over the full alphabet (matrix gates optional).
inline Circuit random_circuit(Rng &rng, std::size_t width, std::size_t n_gates,
                              bool matrix_gates = true) {
    Circuit c(width, "random");
    const std::size_t n_kinds = matrix_gates ? 14 : 12;
    for (std::size_t i = 0; i < n_gates; ++i) {
        auto kind = static_cast<GateKind>(rng.below(n_kinds));
        if (arity(kind) == 2 && width < 2) {
            kind = GateKind::H;
        }
        const auto q0 = static_cast<std::size_t>(rng.below(width));
        std::size_t q1 = q0;
        if (arity(kind) == 2) {
            q1 = (q0 + 1 + rng.below(width - 1)) % width;
        }
        const double angle = 4.0 * 3.141592653589793 * (rng.uniform() - 0.5);
        switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            c.add(Gate::single(kind, q0, angle));
            break;
        case GateKind::U1Q:
            c.add(Gate::unitary1(q0, random_unitary2(rng)));
            break;
        case GateKind::U2Q:
            c.add(Gate::unitary2(q0, q1, haar_unitary4(rng)));
            break;
        default:
            if (arity(kind) == 2) {
                c.add(Gate::two(kind, q0, q1));
            } else {
                c.add(Gate::single(kind, q0));
            }
        }
    }
    return c;
}

inline Circuit bell_circuit() {
    Circuit c(2, "bell");
    c.add(Gate::h(0)).add(Gate::cx(0, 1));
    return c;
}

} // namespace noisetol::test
