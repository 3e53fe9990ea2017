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
 * Exact state-vector simulation: the 2^n amplitude state, gate and Pauli
 * kernels, and noise-free or fault-injected circuit runs.
 */
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace noisetol {

enum class Pauli : std::uint8_t { X, Z, Y };

inline constexpr std::array<Pauli, 3> kPaulis{Pauli::X, Pauli::Z, Pauli::Y};

[[nodiscard]] constexpr char pauli_name(Pauli p) noexcept {
    switch (p) {
    case Pauli::X:
        return 'X';
    case Pauli::Z:
        return 'Z';
    case Pauli::Y:
        return 'Y';
    }
    return '?';
}

/// Upper bound on state-vector storage; the default fits 26 qubits.
struct MemoryBudget {
    std::size_t bytes = std::size_t{1} << 30;
};

namespace kernels {

template <class T>
void apply_matrix_1q(std::span<std::complex<T>> amps, std::size_t q,
                     std::span<const Complex> m) {
    const std::complex<T> m00(m[0]), m01(m[1]), m10(m[2]), m11(m[3]);
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const auto a0 = amps[i];
            const auto a1 = amps[i + stride];
            amps[i] = m00 * a0 + m01 * a1;
            amps[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

template <class T>
void apply_diagonal_1q(std::span<std::complex<T>> amps, std::size_t q,
                       std::complex<T> d0, std::complex<T> d1) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & bit) ? d1 : d0;
    }
}

template <class T> void apply_x(std::span<std::complex<T>> amps, std::size_t q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            std::swap(amps[i], amps[i + stride]);
        }
    }
}

template <class T> void apply_z(std::span<std::complex<T>> amps, std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            amps[i] = -amps[i];
        }
    }
}

// (a0, a1) -> (-i a1, i a0)
template <class T> void apply_y(std::span<std::complex<T>> amps, std::size_t q) {
    const std::size_t stride = std::size_t{1} << q;
    const std::complex<T> i_unit(0, 1);
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const auto a0 = amps[i];
            const auto a1 = amps[i + stride];
            amps[i] = -i_unit * a1;
            amps[i + stride] = i_unit * a0;
        }
    }
}

/// Visits every index with both bits `a` and `b` clear.
template <class Fn>
void for_each_pair_base(std::size_t size, std::size_t a, std::size_t b,
                        Fn &&fn) {
    const std::size_t lo = std::min(a, b);
    const std::size_t hi = std::max(a, b);
    const std::size_t quarter = size >> 2;
    for (std::size_t k = 0; k < quarter; ++k) {
        // insert zero bits at positions lo and hi
        std::size_t i = k;
        i = ((i >> lo) << (lo + 1)) | (i & ((std::size_t{1} << lo) - 1));
        i = ((i >> hi) << (hi + 1)) | (i & ((std::size_t{1} << hi) - 1));
        fn(i);
    }
}

template <class T>
void apply_cx(std::span<std::complex<T>> amps, std::size_t control,
              std::size_t target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for_each_pair_base(amps.size(), control, target, [&](std::size_t i) {
        std::swap(amps[i | cbit], amps[i | cbit | tbit]);
    });
}

template <class T>
void apply_cz(std::span<std::complex<T>> amps, std::size_t a, std::size_t b) {
    const std::size_t both = (std::size_t{1} << a) | (std::size_t{1} << b);
    for_each_pair_base(amps.size(), a, b,
                       [&](std::size_t i) { amps[i | both] = -amps[i | both]; });
}

template <class T>
void apply_swap(std::span<std::complex<T>> amps, std::size_t a, std::size_t b) {
    const std::size_t abit = std::size_t{1} << a;
    const std::size_t bbit = std::size_t{1} << b;
    for_each_pair_base(amps.size(), a, b,
                       [&](std::size_t i) { std::swap(amps[i | abit], amps[i | bbit]); });
}

/// Row-major 4x4 on local index bit(a) + 2 bit(b).
template <class T>
void apply_matrix_2q(std::span<std::complex<T>> amps, std::size_t a,
                     std::size_t b, std::span<const Complex> m) {
    std::array<std::complex<T>, 16> mm;
    for (std::size_t k = 0; k < 16; ++k) {
        mm[k] = std::complex<T>(m[k]);
    }
    const std::size_t abit = std::size_t{1} << a;
    const std::size_t bbit = std::size_t{1} << b;
    for_each_pair_base(amps.size(), a, b, [&](std::size_t i) {
        const std::array<std::size_t, 4> idx{i, i | abit, i | bbit,
                                             i | abit | bbit};
        std::array<std::complex<T>, 4> in{amps[idx[0]], amps[idx[1]],
                                          amps[idx[2]], amps[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            amps[idx[r]] = mm[r * 4 + 0] * in[0] + mm[r * 4 + 1] * in[1] +
                           mm[r * 4 + 2] * in[2] + mm[r * 4 + 3] * in[3];
        }
    });
}

} // namespace kernels

/**
 * Pure n-qubit state held as 2^n complex amplitudes; amplitude k belongs to
 * basis state |k>. The norm is never renormalized, so numerical drift stays
 * observable.
 */
template <class PrecisionT = double> class BasicStateVector {
  public:
    using PrecisionType = PrecisionT;
    using ComplexT = std::complex<PrecisionT>;

    BasicStateVector() = default;

    /// Wraps explicit amplitudes; the length must be a power of two >= 2.
    explicit BasicStateVector(std::vector<ComplexT> amplitudes)
        : amps_(std::move(amplitudes)) {
        if (amps_.size() < 2 || !std::has_single_bit(amps_.size())) {
            throw InvalidArgument(
                "state vector length must be a power of two >= 2");
        }
        width_ = static_cast<std::size_t>(std::countr_zero(amps_.size()));
    }

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const ComplexT> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<ComplexT> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const ComplexT &operator[](std::size_t k) const {
        return amps_[k];
    }

    [[nodiscard]] PrecisionT norm_squared() const noexcept {
        PrecisionT sum = 0;
        for (const auto &a : amps_) {
            sum += std::norm(a);
        }
        return sum;
    }

    /// In-place gate application.
    void apply(const Gate &gate) {
        check_qubits(gate);
        std::span<ComplexT> a{amps_};
        const auto q0 = gate.qubits[0];
        const auto q1 = gate.qubits[1];
        switch (gate.kind) {
        case GateKind::X:
            kernels::apply_x(a, q0);
            break;
        case GateKind::Y:
            kernels::apply_y(a, q0);
            break;
        case GateKind::Z:
            kernels::apply_z(a, q0);
            break;
        case GateKind::S:
            kernels::apply_diagonal_1q(a, q0, ComplexT(1), ComplexT(0, 1));
            break;
        case GateKind::T:
        case GateKind::RZ: {
            const auto m = gate_matrix(gate);
            kernels::apply_diagonal_1q(a, q0, ComplexT(m[0]), ComplexT(m[3]));
            break;
        }
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
            kernels::apply_matrix_1q(a, q0, std::span<const Complex>(gate_matrix(gate)));
            break;
        case GateKind::U1Q:
            kernels::apply_matrix_1q(a, q0, std::span<const Complex>(gate.matrix));
            break;
        case GateKind::CX:
            kernels::apply_cx(a, q0, q1);
            break;
        case GateKind::CZ:
            kernels::apply_cz(a, q0, q1);
            break;
        case GateKind::SWAP:
            kernels::apply_swap(a, q0, q1);
            break;
        case GateKind::U2Q:
            kernels::apply_matrix_2q(a, q0, q1, std::span<const Complex>(gate.matrix));
            break;
        }
    }

    /// In-place Pauli fault on one qubit.
    void apply_pauli(Pauli pauli, std::size_t qubit) {
        if (qubit >= width_) {
            throw QubitOutOfRange(qubit, width_);
        }
        std::span<ComplexT> a{amps_};
        switch (pauli) {
        case Pauli::X:
            kernels::apply_x(a, qubit);
            break;
        case Pauli::Z:
            kernels::apply_z(a, qubit);
            break;
        case Pauli::Y:
            kernels::apply_y(a, qubit);
            break;
        }
    }

    bool operator==(const BasicStateVector &) const = default;

  private:
    void check_qubits(const Gate &gate) const {
        for (const auto q : gate.operands()) {
            if (q >= width_) {
                throw QubitOutOfRange(q, width_);
            }
        }
        if (gate.arity() == 2 && gate.qubits[0] == gate.qubits[1]) {
            throw InvalidCircuit("duplicate qubit in two-qubit gate");
        }
        if (is_matrix_gate(gate.kind) &&
            gate.matrix.size() != (gate.kind == GateKind::U1Q ? 4u : 16u)) {
            throw InvalidCircuit("matrix gate has wrong dimension");
        }
    }

    std::size_t width_ = 0;
    std::vector<ComplexT> amps_;
};

using StateVector = BasicStateVector<double>;

/// Largest width whose amplitudes fit the budget.
template <class PrecisionT = double>
[[nodiscard]] constexpr std::size_t max_width(MemoryBudget budget) noexcept {
    std::size_t n = 0;
    while (n < 62 &&
           (std::size_t{1} << (n + 1)) <=
               budget.bytes / sizeof(std::complex<PrecisionT>)) {
        ++n;
    }
    return n;
}

template <class PrecisionT>
[[nodiscard]] BasicStateVector<PrecisionT>
basic_zero_state(std::size_t width, MemoryBudget budget = {}) {
    if (width < 1) {
        throw InvalidArgument("state width must be at least 1");
    }
    if (width > max_width<PrecisionT>(budget)) {
        throw WidthTooLarge(width, budget.bytes);
    }
    std::vector<std::complex<PrecisionT>> amps(std::size_t{1} << width);
    amps[0] = 1;
    return BasicStateVector<PrecisionT>(std::move(amps));
}

/// |0...0> on `width` qubits.
[[nodiscard]] inline StateVector zero_state(std::size_t width,
                                            MemoryBudget budget = {}) {
    return basic_zero_state<double>(width, budget);
}

template <class P>
[[nodiscard]] BasicStateVector<P> apply_gate(BasicStateVector<P> state,
                                             const Gate &gate) {
    state.apply(gate);
    return state;
}

template <class P>
[[nodiscard]] BasicStateVector<P>
apply_pauli(BasicStateVector<P> state, Pauli pauli, std::size_t qubit) {
    state.apply_pauli(pauli, qubit);
    return state;
}

struct PauliFault {
    Pauli pauli = Pauli::X;
    std::size_t qubit = 0;
    bool operator==(const PauliFault &) const = default;
};

/// Faults keyed by the index of the gate they follow.
using Injections = std::map<std::size_t, std::vector<PauliFault>>;

/// Throws InvalidInjection unless every fault follows an existing gate on
/// one of that gate's operands.
inline void check_injections(const Circuit &circuit,
                             const Injections &injections) {
    for (const auto &[index, faults] : injections) {
        if (index >= circuit.gates.size()) {
            throw InvalidInjection("gate index " + std::to_string(index) +
                                   " is past the end of a " +
                                   std::to_string(circuit.gates.size()) +
                                   "-gate circuit");
        }
        for (const auto &f : faults) {
            if (!circuit.gates[index].acts_on(f.qubit)) {
                throw InvalidInjection("qubit " + std::to_string(f.qubit) +
                                       " is not an operand of gate " +
                                       std::to_string(index));
            }
        }
    }
}

/// Applies gates [begin, end) of `circuit` to `state` in place.
template <class P>
void run_range(BasicStateVector<P> &state, const Circuit &circuit,
               std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        state.apply(circuit.gates[i]);
    }
}

/**
 * Simulates `circuit` from |0...0>; after gate i every fault registered at i
 * is applied in list order.
 */
[[nodiscard]] inline StateVector run(const Circuit &circuit,
                                     const Injections &injections = {},
                                     MemoryBudget budget = {}) {
    check_injections(circuit, injections);
    auto state = zero_state(circuit.width, budget);
    auto next = injections.begin();
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        state.apply(circuit.gates[i]);
        if (next != injections.end() && next->first == i) {
            for (const auto &f : next->second) {
                state.apply_pauli(f.pauli, f.qubit);
            }
            ++next;
        }
    }
    return state;
}

/// Born-rule probabilities |alpha_k|^2.
template <class P>
[[nodiscard]] std::vector<P> distribution(const BasicStateVector<P> &state) {
    std::vector<P> probs(state.size());
    const auto amps = state.amplitudes();
    for (std::size_t k = 0; k < probs.size(); ++k) {
        probs[k] = std::norm(amps[k]);
    }
    return probs;
}

} // namespace noisetol
