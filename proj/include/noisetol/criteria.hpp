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
 * Success criteria scoring an erroneous final state against the noise-free
 * one: fidelity, correct-outcome probability and heavy-output probability.
 *
 * Outcome bitstrings are written most significant qubit first, so character
 * i of an n-character string is qubit n-1-i ("0101" is basis index 5).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "state_vector.hpp"

namespace noisetol {

struct Fidelity {
    bool operator==(const Fidelity &) const = default;
};
struct CorrectOutcome {
    std::string bits;
    bool operator==(const CorrectOutcome &) const = default;
};
struct HeavyOutput {
    bool operator==(const HeavyOutput &) const = default;
};

using SuccessCriterion = std::variant<Fidelity, CorrectOutcome, HeavyOutput>;

[[nodiscard]] inline std::string criterion_name(const SuccessCriterion &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Fidelity>) {
                return "fidelity";
            } else if constexpr (std::is_same_v<T, CorrectOutcome>) {
                return "correct-outcome";
            } else {
                return "heavy-output";
            }
        },
        c);
}

namespace detail {
inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

inline void require_same_width(const StateVector &a, const StateVector &b) {
    if (a.width() != b.width()) {
        throw WidthMismatch(a.width(), b.width());
    }
}
} // namespace detail

/// Basis index of an MSB-first bitstring; throws WidthMismatch or
/// InvalidArgument.
[[nodiscard]] inline std::size_t outcome_index(std::string_view bits,
                                               std::size_t width) {
    if (bits.size() != width) {
        throw WidthMismatch(width, bits.size());
    }
    std::size_t index = 0;
    for (const char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("outcome must contain only '0' and '1': " +
                                  std::string(bits));
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

[[nodiscard]] inline std::string outcome_string(std::size_t index,
                                                std::size_t width) {
    std::string bits(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if ((index >> q) & 1U) {
            bits[width - 1 - q] = '1';
        }
    }
    return bits;
}

/// |<reference|test>|^2
[[nodiscard]] inline double fidelity(const StateVector &reference,
                                     const StateVector &test) {
    detail::require_same_width(reference, test);
    Complex overlap = 0.0;
    const auto a = reference.amplitudes();
    const auto b = test.amplitudes();
    for (std::size_t k = 0; k < a.size(); ++k) {
        overlap += std::conj(a[k]) * b[k];
    }
    return detail::clamp_probability(std::norm(overlap));
}

[[nodiscard]] inline double
correct_outcome_probability(const StateVector &test, std::string_view bits) {
    const auto index = outcome_index(bits, test.width());
    return detail::clamp_probability(std::norm(test[index]));
}

/// Indices whose reference probability is strictly above the median.
[[nodiscard]] inline std::vector<std::size_t>
heavy_set(std::span<const double> reference_probs) {
    std::vector<double> sorted(reference_probs.begin(), reference_probs.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = (n % 2 == 1)
                              ? sorted[n / 2]
                              : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    std::vector<std::size_t> heavy;
    for (std::size_t k = 0; k < reference_probs.size(); ++k) {
        if (reference_probs[k] > median) {
            heavy.push_back(k);
        }
    }
    return heavy;
}

[[nodiscard]] inline double
heavy_output_probability(const StateVector &reference,
                         const StateVector &test) {
    detail::require_same_width(reference, test);
    const auto probs = distribution(reference);
    double mass = 0.0;
    for (const auto k : heavy_set(probs)) {
        mass += std::norm(test[k]);
    }
    return detail::clamp_probability(mass);
}

/// A criterion bound to its noise-free reference state. Derived data (the
/// heavy set, the outcome index) is computed once so evaluation over many
/// erroneous states stays cheap.
class PreparedCriterion {
  public:
    PreparedCriterion(SuccessCriterion criterion, StateVector reference)
        : criterion_(std::move(criterion)), reference_(std::move(reference)) {
        if (const auto *co = std::get_if<CorrectOutcome>(&criterion_)) {
            outcome_ = outcome_index(co->bits, reference_.width());
        } else if (std::holds_alternative<HeavyOutput>(criterion_)) {
            heavy_ = heavy_set(distribution(reference_));
        }
    }

    [[nodiscard]] const StateVector &reference() const noexcept {
        return reference_;
    }
    [[nodiscard]] const SuccessCriterion &criterion() const noexcept {
        return criterion_;
    }

    [[nodiscard]] double operator()(const StateVector &test) const {
        detail::require_same_width(reference_, test);
        switch (criterion_.index()) {
        case 0:
            return fidelity(reference_, test);
        case 1:
            return detail::clamp_probability(std::norm(test[outcome_]));
        default: {
            double mass = 0.0;
            for (const auto k : heavy_) {
                mass += std::norm(test[k]);
            }
            return detail::clamp_probability(mass);
        }
        }
    }

  private:
    SuccessCriterion criterion_;
    StateVector reference_;
    std::size_t outcome_ = 0;
    std::vector<std::size_t> heavy_;
};

/// Scores `test` against `reference`; the reference is unused for
/// CorrectOutcome.
[[nodiscard]] inline double evaluate(const SuccessCriterion &criterion,
                                     const StateVector &reference,
                                     const StateVector &test) {
    return std::visit(
        [&](const auto &c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Fidelity>) {
                return fidelity(reference, test);
            } else if constexpr (std::is_same_v<T, CorrectOutcome>) {
                return correct_outcome_probability(test, c.bits);
            } else {
                return heavy_output_probability(reference, test);
            }
        },
        criterion);
}

} // namespace noisetol
