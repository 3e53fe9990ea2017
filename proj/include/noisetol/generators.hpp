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
 * Parametric benchmark circuit families: QFT, Bernstein-Vazirani, Grover,
 * hidden linear function, quantum volume and RYRZ ansatz circuits, all built
 * for an unconstrained (all-to-all) device.
 */
#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "criteria.hpp"
#include "decompose.hpp"
#include "error.hpp"
#include "random.hpp"

namespace noisetol {

enum class Family : std::uint8_t { QFT, BV, Grover, HLF, QV, RYRZ };

[[nodiscard]] constexpr std::string_view family_name(Family f) noexcept {
    switch (f) {
    case Family::QFT:
        return "qft";
    case Family::BV:
        return "bv";
    case Family::Grover:
        return "grover";
    case Family::HLF:
        return "hlf";
    case Family::QV:
        return "qv";
    case Family::RYRZ:
        return "ryrz";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Family> parse_family(std::string_view s) {
    for (const auto f : {Family::QFT, Family::BV, Family::Grover, Family::HLF,
                         Family::QV, Family::RYRZ}) {
        if (family_name(f) == s) {
            return f;
        }
    }
    return std::nullopt;
}

struct BenchmarkSpec {
    Family family = Family::QFT;
    std::size_t width = 1;
    /// BV: width-1 characters, MSB first over the data qubits.
    std::string hidden_string;
    /// Grover: marked basis index; defaults to all ones.
    std::optional<std::uint64_t> marked;
    /// Grover: iteration count; defaults to floor(pi/4 sqrt(2^n)).
    std::optional<std::size_t> iterations;
    /// HLF: symmetric 0/1 matrix; random from the seed when empty.
    std::vector<std::vector<int>> hlf_matrix;
    /// RYRZ: number of rotation+entangler blocks.
    std::size_t depth = 1;
    /// QV: expand each random two-qubit block into {U1Q, RY, RZ, CX}.
    bool decompose_qv = false;
};

/// Largest width the generators accept; state vectors cap far earlier.
inline constexpr std::size_t kMaxGeneratorWidth = 62;

inline void require_valid(const BenchmarkSpec &spec) {
    if (spec.width < 1 || spec.width > kMaxGeneratorWidth) {
        throw InvalidSpec("width must be in [1, " +
                          std::to_string(kMaxGeneratorWidth) + "]");
    }
    switch (spec.family) {
    case Family::BV:
        if (spec.hidden_string.size() != spec.width - 1) {
            throw InvalidSpec("BV hidden string must have width-1 = " +
                              std::to_string(spec.width - 1) + " bits");
        }
        for (const char c : spec.hidden_string) {
            if (c != '0' && c != '1') {
                throw InvalidSpec("BV hidden string must be binary");
            }
        }
        break;
    case Family::Grover:
        if (spec.marked && *spec.marked >> spec.width != 0) {
            throw InvalidSpec("Grover marked element does not fit the width");
        }
        break;
    case Family::HLF:
        if (!spec.hlf_matrix.empty()) {
            if (spec.hlf_matrix.size() != spec.width) {
                throw InvalidSpec("HLF matrix must be width x width");
            }
            for (std::size_t i = 0; i < spec.width; ++i) {
                if (spec.hlf_matrix[i].size() != spec.width) {
                    throw InvalidSpec("HLF matrix must be width x width");
                }
                for (std::size_t j = 0; j < spec.width; ++j) {
                    const int v = spec.hlf_matrix[i][j];
                    if ((v != 0 && v != 1) || v != spec.hlf_matrix[j][i]) {
                        throw InvalidSpec(
                            "HLF matrix must be symmetric and binary");
                    }
                }
            }
        }
        break;
    case Family::QV:
        if (spec.width < 2) {
            throw InvalidSpec("QV circuits need at least 2 qubits");
        }
        break;
    case Family::RYRZ:
        if (spec.depth < 1) {
            throw InvalidSpec("RYRZ depth must be at least 1");
        }
        break;
    case Family::QFT:
        break;
    }
}

[[nodiscard]] inline std::size_t default_grover_iterations(std::size_t width) {
    const double n_states = std::ldexp(1.0, static_cast<int>(width));
    return static_cast<std::size_t>(
        std::floor(std::numbers::pi / 4.0 * std::sqrt(n_states)));
}

namespace generators {

/// Controlled phase diag(1, 1, 1, e^{i lambda}) up to global phase.
inline void controlled_phase(Circuit &c, std::size_t control,
                             std::size_t target, double lambda) {
    c.add(Gate::rz(control, lambda / 2.0));
    c.add(Gate::cx(control, target));
    c.add(Gate::rz(target, -lambda / 2.0));
    c.add(Gate::cx(control, target));
    c.add(Gate::rz(target, lambda / 2.0));
}

/**
 * Phase flip of |1...1> over `qubits` up to global phase. For three or more
 * qubits uses the parity expansion
 *   x_1 ... x_n = 2^{1-n} sum_{S != {}} (-1)^{|S|-1} XOR_{i in S} x_i,
 * each parity phase realized by a CX ladder onto the highest qubit of S.
 */
inline void multi_controlled_z(Circuit &c,
                               const std::vector<std::size_t> &qubits) {
    const std::size_t n = qubits.size();
    if (n == 1) {
        c.add(Gate::z(qubits[0]));
        return;
    }
    if (n == 2) {
        c.add(Gate::cz(qubits[0], qubits[1]));
        return;
    }
    const double unit = std::numbers::pi / std::ldexp(1.0, static_cast<int>(n - 1));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const auto popcount = std::popcount(mask);
        const auto top = static_cast<std::size_t>(63 - std::countl_zero(mask));
        const double theta = (popcount % 2 == 1) ? unit : -unit;
        for (std::size_t i = 0; i < top; ++i) {
            if ((mask >> i) & 1U) {
                c.add(Gate::cx(qubits[i], qubits[top]));
            }
        }
        c.add(Gate::rz(qubits[top], theta));
        for (std::size_t i = top; i-- > 0;) {
            if ((mask >> i) & 1U) {
                c.add(Gate::cx(qubits[i], qubits[top]));
            }
        }
    }
}

inline Circuit qft(std::size_t n) {
    Circuit c(n, "qft_" + std::to_string(n));
    for (std::size_t j = n; j-- > 0;) {
        c.add(Gate::h(j));
        for (std::size_t k = j; k-- > 0;) {
            controlled_phase(c, k, j,
                             std::numbers::pi /
                                 std::ldexp(1.0, static_cast<int>(j - k)));
        }
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        c.add(Gate::swap(i, n - 1 - i));
    }
    return c;
}

// data qubits 0..n-2, ancilla n-1 prepared in |->
inline Circuit bernstein_vazirani(std::size_t n, std::string_view hidden) {
    Circuit c(n, "bv_" + std::to_string(n));
    const std::size_t ancilla = n - 1;
    c.add(Gate::x(ancilla));
    for (std::size_t q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        if (hidden[i] == '1') {
            c.add(Gate::cx(n - 2 - i, ancilla));
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    return c;
}

inline Circuit grover(std::size_t n, std::uint64_t marked,
                      std::size_t iterations) {
    Circuit c(n, "grover_" + std::to_string(n));
    std::vector<std::size_t> all(n);
    for (std::size_t q = 0; q < n; ++q) {
        all[q] = q;
        c.add(Gate::h(q));
    }
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t q = 0; q < n; ++q) {
            if (((marked >> q) & 1U) == 0) {
                c.add(Gate::x(q));
            }
        }
        multi_controlled_z(c, all);
        for (std::size_t q = 0; q < n; ++q) {
            if (((marked >> q) & 1U) == 0) {
                c.add(Gate::x(q));
            }
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.add(Gate::h(q));
            c.add(Gate::x(q));
        }
        multi_controlled_z(c, all);
        for (std::size_t q = 0; q < n; ++q) {
            c.add(Gate::x(q));
            c.add(Gate::h(q));
        }
    }
    return c;
}

inline Circuit hidden_linear_function(const std::vector<std::vector<int>> &a) {
    const std::size_t n = a.size();
    Circuit c(n, "hlf_" + std::to_string(n));
    for (std::size_t q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i][j] != 0) {
                c.add(Gate::cz(i, j));
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] != 0) {
            c.add(Gate::s(i));
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    return c;
}

inline std::vector<std::vector<int>> random_hlf_matrix(std::size_t n,
                                                       Rng &rng) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            a[i][j] = a[j][i] = static_cast<int>(rng.below(2));
        }
    }
    return a;
}

inline Circuit ryrz(std::size_t n, std::size_t depth, Rng &rng) {
    Circuit c(n, "ryrz_" + std::to_string(n) + "_d" + std::to_string(depth));
    auto rotation_layers = [&] {
        for (std::size_t q = 0; q < n; ++q) {
            c.add(Gate::ry(q, 2.0 * std::numbers::pi * rng.uniform()));
        }
        for (std::size_t q = 0; q < n; ++q) {
            c.add(Gate::rz(q, 2.0 * std::numbers::pi * rng.uniform()));
        }
    };
    for (std::size_t d = 0; d < depth; ++d) {
        rotation_layers();
        for (std::size_t q = 0; q + 1 < n; ++q) {
            c.add(Gate::cx(q, q + 1));
        }
    }
    rotation_layers();
    return c;
}

// width layers, each a random pairing of floor(width/2) Haar blocks
inline Circuit quantum_volume(std::size_t n, bool decompose, Rng &rng) {
    Circuit c(n, "qv_" + std::to_string(n));
    for (std::size_t layer = 0; layer < n; ++layer) {
        const auto perm = rng.permutation(n);
        for (std::size_t j = 0; j + 1 < n; j += 2) {
            auto block = Gate::unitary2(perm[j], perm[j + 1], haar_unitary4(rng));
            if (decompose) {
                for (auto &g : decompose_two_qubit(block)) {
                    c.add(std::move(g));
                }
            } else {
                c.add(std::move(block));
            }
        }
    }
    return c;
}

} // namespace generators

/// Builds the benchmark circuit; a pure function of (spec, seed).
[[nodiscard]] inline Circuit generate(const BenchmarkSpec &spec,
                                      std::uint64_t seed) {
    require_valid(spec);
    Rng rng(seed);
    const std::size_t n = spec.width;
    switch (spec.family) {
    case Family::QFT:
        return generators::qft(n);
    case Family::BV:
        return generators::bernstein_vazirani(n, spec.hidden_string);
    case Family::Grover:
        return generators::grover(
            n, spec.marked.value_or((std::uint64_t{1} << n) - 1),
            spec.iterations.value_or(default_grover_iterations(n)));
    case Family::HLF:
        return generators::hidden_linear_function(
            spec.hlf_matrix.empty() ? generators::random_hlf_matrix(n, rng)
                                    : spec.hlf_matrix);
    case Family::QV:
        return generators::quantum_volume(n, spec.decompose_qv, rng);
    case Family::RYRZ:
        return generators::ryrz(n, spec.depth, rng);
    }
    throw InvalidSpec("unknown family");
}

/// Expected measurement outcome for single-answer families (BV, Grover).
/// BV strings carry the ancilla's '1' as the leading character.
[[nodiscard]] inline std::string correct_outcome(const BenchmarkSpec &spec) {
    require_valid(spec);
    switch (spec.family) {
    case Family::BV:
        return "1" + spec.hidden_string;
    case Family::Grover:
        return outcome_string(
            spec.marked.value_or((std::uint64_t{1} << spec.width) - 1),
            spec.width);
    default:
        throw NoSingleOutcome(std::string(family_name(spec.family)));
    }
}

/// The success criterion used for each family: correct outcome where one
/// exists, heavy output for QV, fidelity otherwise.
[[nodiscard]] inline SuccessCriterion
default_criterion(const BenchmarkSpec &spec) {
    switch (spec.family) {
    case Family::BV:
    case Family::Grover:
        return CorrectOutcome{correct_outcome(spec)};
    case Family::QV:
        return HeavyOutput{};
    default:
        return Fidelity{};
    }
}

} // namespace noisetol
