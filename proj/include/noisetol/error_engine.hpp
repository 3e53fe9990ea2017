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
 * Pauli error injection: exhaustive single-fault sweeps and seeded Monte
 * Carlo sampling of the per-gate Pauli channel.
 *
 * Faults follow gates only. A single-qubit gate is one fault location, a
 * two-qubit gate is two (one per operand); each location can carry X, Z or Y.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "criteria.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "state_vector.hpp"

namespace noisetol {

/// Default Monte Carlo trajectories per (circuit, rate) point.
inline constexpr std::size_t kDefaultRuns = 1000;

struct SimulationOptions {
    std::size_t workers = 0; // 0 = hardware concurrency
    MemoryBudget budget{};
};

/// Per gate-qubit probabilities of an X, Z or Y fault.
struct ErrorRates {
    double p_x = 0.0;
    double p_z = 0.0;
    double p_y = 0.0;

    [[nodiscard]] double total() const noexcept { return p_x + p_z + p_y; }
    [[nodiscard]] double of(Pauli p) const noexcept {
        switch (p) {
        case Pauli::X:
            return p_x;
        case Pauli::Z:
            return p_z;
        case Pauli::Y:
            return p_y;
        }
        return 0.0;
    }
    /// Splits `p` equally over the three Pauli types.
    [[nodiscard]] static ErrorRates uniform(double p) noexcept {
        return {p / 3.0, p / 3.0, p / 3.0};
    }
    bool operator==(const ErrorRates &) const = default;
};

inline void require_valid(const ErrorRates &rates) {
    for (const double p : {rates.p_x, rates.p_z, rates.p_y}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw RateInvalid("each Pauli rate must lie in [0, 1], got " +
                              std::to_string(p));
        }
    }
    // small slack so uniform(1.0) survives the division by three
    if (rates.total() > 1.0 + 1e-12) {
        throw RateInvalid("total Pauli rate exceeds 1: " +
                          std::to_string(rates.total()));
    }
}

struct ErrorInstance {
    std::size_t gate_index = 0;
    std::size_t qubit = 0;
    Pauli pauli = Pauli::X;
    bool operator==(const ErrorInstance &) const = default;
};

/// Every single-fault experiment, ordered by (gate index, operand, X/Z/Y).
[[nodiscard]] inline std::vector<ErrorInstance>
enumerate_single_errors(const Circuit &circuit) {
    std::vector<ErrorInstance> out;
    out.reserve(circuit_stats(circuit).error_locations);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        for (const auto q : circuit.gates[i].operands()) {
            for (const auto p : kPaulis) {
                out.push_back({i, q, p});
            }
        }
    }
    return out;
}

struct ExhaustiveSummary {
    double reference_success = 0.0;        // P_R
    std::array<double, 3> mean_success{};  // indexed by Pauli: X, Z, Y
    std::size_t locations_per_pauli = 0;   // k + 2m
    std::vector<double> per_instance;      // enumerate_single_errors order

    [[nodiscard]] double mean(Pauli p) const noexcept {
        return mean_success[static_cast<std::size_t>(p)];
    }
    /// Success under one fault of uniformly random type: sum_e P_e / 3.
    [[nodiscard]] double one_error_success() const noexcept {
        return (mean_success[0] + mean_success[1] + mean_success[2]) / 3.0;
    }
};

/**
 * Simulates the circuit once per single Pauli fault and averages the
 * criterion per fault type. Work is split over contiguous gate ranges; each
 * range walks its own noise-free prefix so faults share the prefix work.
 * With no fault locations the per-type means equal P_R.
 */
[[nodiscard]] inline ExhaustiveSummary
exhaustive_sweep(const Circuit &circuit, const SuccessCriterion &criterion,
                 const SimulationOptions &options = {}) {
    require_valid(circuit);
    const PreparedCriterion score(criterion, run(circuit, {}, options.budget));

    ExhaustiveSummary summary;
    summary.reference_success = score(score.reference());
    const auto stats = circuit_stats(circuit);
    summary.locations_per_pauli =
        stats.single_qubit_gates + 2 * stats.two_qubit_gates;
    summary.per_instance.assign(stats.error_locations, 0.0);

    // offset of each gate's first instance
    const std::size_t n_gates = circuit.gates.size();
    std::vector<std::size_t> first(n_gates + 1, 0);
    for (std::size_t i = 0; i < n_gates; ++i) {
        first[i + 1] = first[i] + 3 * circuit.gates[i].arity();
    }

    parallel_for(n_gates, options.workers,
                 [&](std::size_t begin, std::size_t end) {
                     auto prefix = zero_state(circuit.width, options.budget);
                     run_range(prefix, circuit, 0, begin);
                     for (std::size_t i = begin; i < end; ++i) {
                         prefix.apply(circuit.gates[i]);
                         std::size_t slot = first[i];
                         for (const auto q : circuit.gates[i].operands()) {
                             for (const auto p : kPaulis) {
                                 auto state = prefix;
                                 state.apply_pauli(p, q);
                                 run_range(state, circuit, i + 1, n_gates);
                                 summary.per_instance[slot++] = score(state);
                             }
                         }
                     }
                 });

    if (summary.locations_per_pauli == 0) {
        summary.mean_success.fill(summary.reference_success);
        return summary;
    }
    std::array<double, 3> sums{};
    for (std::size_t j = 0; j < summary.per_instance.size(); ++j) {
        sums[j % 3] += summary.per_instance[j];
    }
    for (std::size_t e = 0; e < 3; ++e) {
        summary.mean_success[e] =
            sums[e] / static_cast<double>(summary.locations_per_pauli);
    }
    return summary;
}

namespace detail {
inline bool sample_fault(Rng &rng, const ErrorRates &rates, Pauli &out) {
    const double u = rng.uniform();
    if (u < rates.p_x) {
        out = Pauli::X;
    } else if (u < rates.p_x + rates.p_z) {
        out = Pauli::Z;
    } else if (u < rates.p_x + rates.p_z + rates.p_y) {
        out = Pauli::Y;
    } else {
        return false;
    }
    return true;
}
} // namespace detail

/**
 * One noisy trajectory. After each gate every operand qubit independently
 * draws one uniform u and receives X if u < p_x, Z if u < p_x + p_z, Y if
 * u < p. The draw sequence is a pure function of (circuit, seed).
 */
[[nodiscard]] inline StateVector monte_carlo_run(const Circuit &circuit,
                                                 const ErrorRates &rates,
                                                 std::uint64_t seed,
                                                 MemoryBudget budget = {}) {
    require_valid(rates);
    require_valid(circuit);
    Rng rng(seed);
    auto state = zero_state(circuit.width, budget);
    Pauli fault{};
    for (const auto &gate : circuit.gates) {
        state.apply(gate);
        for (const auto q : gate.operands()) {
            if (detail::sample_fault(rng, rates, fault)) {
                state.apply_pauli(fault, q);
            }
        }
    }
    return state;
}

struct EnsembleResult {
    double mean = 0.0;
    double standard_error = 0.0; // sample stddev / sqrt(n); 0 when n == 1
    std::size_t runs = 0;
    std::vector<double> per_run;
};

/**
 * Mean criterion value over `n_runs` trajectories; run i uses
 * derive_seed(master_seed, i). Values are reduced in run order, so the result
 * is bit-identical for any worker count.
 */
[[nodiscard]] inline EnsembleResult
monte_carlo_ensemble(const Circuit &circuit, const ErrorRates &rates,
                     const SuccessCriterion &criterion, std::size_t n_runs,
                     std::uint64_t master_seed,
                     const SimulationOptions &options = {}) {
    if (n_runs < 1) {
        throw InvalidArgument("monte_carlo_ensemble needs at least one run");
    }
    require_valid(rates);
    require_valid(circuit);
    const PreparedCriterion score(criterion, run(circuit, {}, options.budget));

    EnsembleResult result;
    result.runs = n_runs;
    result.per_run.assign(n_runs, 0.0);
    parallel_for(n_runs, options.workers,
                 [&](std::size_t begin, std::size_t end) {
                     for (std::size_t i = begin; i < end; ++i) {
                         const auto state = monte_carlo_run(
                             circuit, rates, derive_seed(master_seed, i),
                             options.budget);
                         result.per_run[i] = score(state);
                     }
                 });

    double sum = 0.0;
    for (const double v : result.per_run) {
        sum += v;
    }
    const auto n = static_cast<double>(n_runs);
    result.mean = sum / n;
    if (n_runs > 1) {
        double ss = 0.0;
        for (const double v : result.per_run) {
            ss += (v - result.mean) * (v - result.mean);
        }
        result.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return result;
}

} // namespace noisetol
