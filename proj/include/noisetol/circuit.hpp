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
/**
 * @file
 * Circuit intermediate representation: the gate alphabet, circuits and the
 * size statistics used by the error analyses.
 *
 * Qubit convention: qubit j is bit j of a basis-state index (little-endian).
 * Matrix gates use the same convention locally: for a two-qubit gate on
 * operands (a, b) the 4x4 matrix is indexed by bit(a) + 2 * bit(b).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace noisetol {

using Complex = std::complex<double>;

/// Tolerance on max |U^dagger U - I| for matrix gates.
inline constexpr double kUnitarityTolerance = 1e-9;

enum class GateKind : std::uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    T,
    RX,
    RY,
    RZ,
    CX,
    CZ,
    SWAP,
    U1Q,
    U2Q,
};

[[nodiscard]] constexpr std::size_t arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::U2Q:
        return 2;
    default:
        return 1;
    }
}

[[nodiscard]] constexpr bool is_rotation(GateKind kind) noexcept {
    return kind == GateKind::RX || kind == GateKind::RY ||
           kind == GateKind::RZ;
}

[[nodiscard]] constexpr bool is_matrix_gate(GateKind kind) noexcept {
    return kind == GateKind::U1Q || kind == GateKind::U2Q;
}

[[nodiscard]] constexpr std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::H:
        return "h";
    case GateKind::X:
        return "x";
    case GateKind::Y:
        return "y";
    case GateKind::Z:
        return "z";
    case GateKind::S:
        return "s";
    case GateKind::T:
        return "t";
    case GateKind::RX:
        return "rx";
    case GateKind::RY:
        return "ry";
    case GateKind::RZ:
        return "rz";
    case GateKind::CX:
        return "cx";
    case GateKind::CZ:
        return "cz";
    case GateKind::SWAP:
        return "swap";
    case GateKind::U1Q:
        return "u1q";
    case GateKind::U2Q:
        return "u2q";
    }
    return "?";
}

/**
 * One gate application. Rotations carry an angle in radians, U1Q/U2Q carry a
 * row-major 2x2 or 4x4 unitary. For CX the operands are (control, target).
 */
struct Gate {
    GateKind kind = GateKind::H;
    std::array<std::size_t, 2> qubits{};
    double angle = 0.0;
    std::vector<Complex> matrix;

    [[nodiscard]] std::size_t arity() const noexcept {
        return noisetol::arity(kind);
    }
    [[nodiscard]] std::span<const std::size_t> operands() const noexcept {
        return {qubits.data(), arity()};
    }
    [[nodiscard]] bool acts_on(std::size_t qubit) const noexcept {
        const auto ops = operands();
        return std::find(ops.begin(), ops.end(), qubit) != ops.end();
    }

    bool operator==(const Gate &) const = default;

    static Gate single(GateKind kind, std::size_t q, double angle = 0.0) {
        return Gate{kind, {q, 0}, angle, {}};
    }
    static Gate two(GateKind kind, std::size_t a, std::size_t b) {
        return Gate{kind, {a, b}, 0.0, {}};
    }

    static Gate h(std::size_t q) { return single(GateKind::H, q); }
    static Gate x(std::size_t q) { return single(GateKind::X, q); }
    static Gate y(std::size_t q) { return single(GateKind::Y, q); }
    static Gate z(std::size_t q) { return single(GateKind::Z, q); }
    static Gate s(std::size_t q) { return single(GateKind::S, q); }
    static Gate t(std::size_t q) { return single(GateKind::T, q); }
    static Gate rx(std::size_t q, double theta) {
        return single(GateKind::RX, q, theta);
    }
    static Gate ry(std::size_t q, double theta) {
        return single(GateKind::RY, q, theta);
    }
    static Gate rz(std::size_t q, double theta) {
        return single(GateKind::RZ, q, theta);
    }
    static Gate cx(std::size_t control, std::size_t target) {
        return two(GateKind::CX, control, target);
    }
    static Gate cz(std::size_t a, std::size_t b) {
        return two(GateKind::CZ, a, b);
    }
    static Gate swap(std::size_t a, std::size_t b) {
        return two(GateKind::SWAP, a, b);
    }
    static Gate unitary1(std::size_t q, std::vector<Complex> m) {
        return Gate{GateKind::U1Q, {q, 0}, 0.0, std::move(m)};
    }
    static Gate unitary2(std::size_t a, std::size_t b,
                         std::vector<Complex> m) {
        return Gate{GateKind::U2Q, {a, b}, 0.0, std::move(m)};
    }
};

/// Row-major matrix of a gate in its local operand basis (2x2 or 4x4).
[[nodiscard]] inline std::vector<Complex> gate_matrix(const Gate &gate) {
    using namespace std::complex_literals;
    constexpr double r = 0.70710678118654752440;
    const double c = std::cos(gate.angle / 2.0);
    const double s = std::sin(gate.angle / 2.0);
    switch (gate.kind) {
    case GateKind::H:
        return {r, r, r, -r};
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y:
        return {0.0, -1i, 1i, 0.0};
    case GateKind::Z:
        return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S:
        return {1.0, 0.0, 0.0, 1i};
    case GateKind::T:
        return {1.0, 0.0, 0.0, Complex{r, r}};
    case GateKind::RX:
        return {c, -1i * s, -1i * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {std::polar(1.0, -gate.angle / 2.0), 0.0, 0.0,
                std::polar(1.0, gate.angle / 2.0)};
    case GateKind::CX: {
        // operand 0 (control) is the low local bit
        std::vector<Complex> m(16, 0.0);
        m[0 * 4 + 0] = 1.0;
        m[1 * 4 + 3] = 1.0;
        m[2 * 4 + 2] = 1.0;
        m[3 * 4 + 1] = 1.0;
        return m;
    }
    case GateKind::CZ: {
        std::vector<Complex> m(16, 0.0);
        m[0] = m[5] = m[10] = 1.0;
        m[15] = -1.0;
        return m;
    }
    case GateKind::SWAP: {
        std::vector<Complex> m(16, 0.0);
        m[0 * 4 + 0] = 1.0;
        m[1 * 4 + 2] = 1.0;
        m[2 * 4 + 1] = 1.0;
        m[3 * 4 + 3] = 1.0;
        return m;
    }
    case GateKind::U1Q:
    case GateKind::U2Q:
        return gate.matrix;
    }
    return {};
}

/// max |(U^dagger U - I)_ij| for a row-major dim x dim matrix.
[[nodiscard]] inline double unitarity_defect(std::span<const Complex> m,
                                             std::size_t dim) {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(m[k * dim + i]) * m[k * dim + j];
            }
            if (i == j) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

struct Circuit {
    std::size_t width = 1;
    std::vector<Gate> gates;
    std::string name;

    Circuit() = default;
    explicit Circuit(std::size_t n, std::string label = {})
        : width(n), name(std::move(label)) {}

    Circuit &add(Gate gate) {
        gates.push_back(std::move(gate));
        return *this;
    }
    [[nodiscard]] std::size_t size() const noexcept { return gates.size(); }

    /// Structural equality: width and gate sequence; the label is ignored.
    [[nodiscard]] bool same_structure(const Circuit &other) const {
        return width == other.width && gates == other.gates;
    }
};

struct CircuitStats {
    std::size_t single_qubit_gates = 0; // k
    std::size_t two_qubit_gates = 0;    // m
    std::size_t gate_count = 0;         // G = k + m
    std::size_t error_locations = 0;    // 3 (k + 2m)

    bool operator==(const CircuitStats &) const = default;
};

[[nodiscard]] inline CircuitStats circuit_stats(const Circuit &circuit) {
    CircuitStats stats;
    for (const auto &gate : circuit.gates) {
        if (gate.arity() == 1) {
            ++stats.single_qubit_gates;
        } else {
            ++stats.two_qubit_gates;
        }
    }
    stats.gate_count = stats.single_qubit_gates + stats.two_qubit_gates;
    stats.error_locations =
        3 * (stats.single_qubit_gates + 2 * stats.two_qubit_gates);
    return stats;
}

struct Violation {
    std::optional<std::size_t> gate_index; // empty for circuit-level rules
    std::string rule;

    [[nodiscard]] std::string message() const {
        if (!gate_index) {
            return rule;
        }
        return rule + " at gate " + std::to_string(*gate_index);
    }
};

/// Checks one gate against a circuit width. Violation::gate_index is unset.
[[nodiscard]] inline std::vector<Violation>
validate_gate(const Gate &gate, std::size_t width) {
    std::vector<Violation> out;
    for (const auto q : gate.operands()) {
        if (q >= width) {
            out.push_back({std::nullopt, "qubit index out of range"});
            break;
        }
    }
    if (gate.arity() == 2 && gate.qubits[0] == gate.qubits[1]) {
        out.push_back({std::nullopt, "duplicate qubit"});
    }
    if (is_rotation(gate.kind) && !std::isfinite(gate.angle)) {
        out.push_back({std::nullopt, "non-finite rotation angle"});
    }
    if (is_matrix_gate(gate.kind)) {
        const std::size_t dim = gate.kind == GateKind::U1Q ? 2 : 4;
        if (gate.matrix.size() != dim * dim) {
            out.push_back({std::nullopt, "matrix has wrong dimension"});
        } else if (!(unitarity_defect(gate.matrix, dim) <=
                     kUnitarityTolerance)) {
            out.push_back({std::nullopt, "matrix is not unitary"});
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    if (circuit.width < 1) {
        out.push_back({std::nullopt, "circuit width must be at least 1"});
    }
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        for (auto v : validate_gate(circuit.gates[i], circuit.width)) {
            v.gate_index = i;
            out.push_back(std::move(v));
        }
    }
    return out;
}

/// Throws InvalidCircuit with the first violation, if any.
inline void require_valid(const Circuit &circuit) {
    const auto violations = validate(circuit);
    if (!violations.empty()) {
        throw InvalidCircuit(violations.front().message());
    }
}

} // namespace noisetol
