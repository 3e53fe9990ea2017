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
 * Top-level queries: expected success probability at a Pauli error rate,
 * the tolerable uniform error rate for a target success probability, and the
 * inverse-gate-count extrapolation of tolerable rates.
 *
 * Both queries also accept an ensemble of workloads (used for quantum volume,
 * where one data point averages many random circuits). Workload i of an
 * ensemble draws its Monte Carlo trajectories from derive_seed(master, i);
 * a single circuit uses the master seed directly.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "criteria.hpp"
#include "error.hpp"
#include "error_engine.hpp"
#include "generators.hpp"
#include "random.hpp"

namespace noisetol {

enum class Regime : std::uint8_t { Exhaustive, MonteCarlo, ClosedForm, Search };

[[nodiscard]] constexpr std::string_view regime_name(Regime r) noexcept {
    switch (r) {
    case Regime::Exhaustive:
        return "EXHAUSTIVE";
    case Regime::MonteCarlo:
        return "MONTE_CARLO";
    case Regime::ClosedForm:
        return "CLOSED_FORM";
    case Regime::Search:
        return "SEARCH";
    }
    return "?";
}

struct SearchStep {
    double rate = 0.0;
    double success = 0.0;
    double standard_error = 0.0;
};

struct AnalysisResult {
    double value = 0.0; // success probability or tolerable rate
    Regime regime = Regime::Exhaustive;
    double expected_errors = 0.0; // E(N) = G p
    std::optional<double> standard_error;
    std::optional<std::size_t> samples; // simulated trajectories
    std::optional<std::vector<SearchStep>> search_trace;
    std::optional<double> reference_success; // P_R, when a sweep ran
    std::optional<double> one_error_success; // sum_e P_e / 3
};

/**
 * What E(N) = count * p counts. `Gates` uses the gate count G. `Locations`
 * uses the k + 2m gate-qubit fault locations the Monte Carlo channel actually
 * samples; the two differ once a circuit has two-qubit gates.
 */
enum class FaultCountBasis : std::uint8_t { Gates, Locations };

[[nodiscard]] inline std::size_t fault_count(const Circuit &circuit,
                                             FaultCountBasis basis) {
    const auto stats = circuit_stats(circuit);
    return basis == FaultCountBasis::Gates
               ? stats.gate_count
               : stats.single_qubit_gates + 2 * stats.two_qubit_gates;
}

struct AnalysisOptions {
    std::size_t n_runs = kDefaultRuns;
    FaultCountBasis fault_count_basis = FaultCountBasis::Gates;
    std::size_t max_evaluations = 60;
    double tolerance = 0.005; // absolute, on success probability
    SimulationOptions simulation{};
};

struct Workload {
    Circuit circuit;
    SuccessCriterion criterion;
};

/**
 * Success under at most one average fault:
 *   P = sum_e P_e E(N_e) + P_R (1 - sum_e E(N_e)),  E(N_e) = G p_e.
 */
[[nodiscard]] inline double linearized_success(double reference_success,
                                               std::span<const double, 3> per_type,
                                               std::size_t gate_count,
                                               const ErrorRates &rates) {
    const auto g = static_cast<double>(gate_count);
    const double e_x = g * rates.p_x;
    const double e_z = g * rates.p_z;
    const double e_y = g * rates.p_y;
    if (e_x < 0.0 || e_z < 0.0 || e_y < 0.0) {
        throw RateInvalid("expected error counts must be non-negative");
    }
    return per_type[0] * e_x + per_type[1] * e_z + per_type[2] * e_y +
           reference_success * (1.0 - (e_x + e_z + e_y));
}

[[nodiscard]] inline double linearized_success(const ExhaustiveSummary &s,
                                               std::size_t gate_count,
                                               const ErrorRates &rates) {
    return linearized_success(s.reference_success, s.mean_success, gate_count,
                              rates);
}

/**
 * Uniform rate p (p/3 per type) at which the linearized success equals the
 * target: p = G^-1 (P - P_R) / (S_1 - P_R).
 */
[[nodiscard]] inline double closed_form_rate(double target,
                                             double reference_success,
                                             double one_error_success,
                                             std::size_t gate_count) {
    if (gate_count == 0) {
        throw InvalidArgument("closed-form rate needs at least one gate");
    }
    if (one_error_success == reference_success) {
        throw InvalidArgument(
            "closed-form rate undefined when single faults do not change "
            "success");
    }
    return (target - reference_success) /
           (one_error_success - reference_success) /
           static_cast<double>(gate_count);
}

namespace detail {

inline void require_target(double target) {
    if (!(target > 0.0 && target < 1.0)) {
        throw InvalidArgument("target success probability must lie in (0, 1)");
    }
}

inline std::uint64_t workload_seed(std::span<const Workload> w,
                                   std::uint64_t master, std::size_t i) {
    return w.size() == 1 ? master : derive_seed(master, i);
}

struct EnsemblePoint {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t runs = 0;
};

inline EnsemblePoint monte_carlo_point(std::span<const Workload> workloads,
                                       const ErrorRates &rates,
                                       std::uint64_t master,
                                       const AnalysisOptions &options) {
    EnsemblePoint point;
    double var_sum = 0.0;
    for (std::size_t i = 0; i < workloads.size(); ++i) {
        const auto r = monte_carlo_ensemble(
            workloads[i].circuit, rates, workloads[i].criterion,
            options.n_runs, workload_seed(workloads, master, i),
            options.simulation);
        point.mean += r.mean;
        var_sum += r.standard_error * r.standard_error;
        point.runs += r.runs;
    }
    const auto n = static_cast<double>(workloads.size());
    point.mean /= n;
    point.standard_error = std::sqrt(var_sum) / n;
    return point;
}

inline std::size_t common_fault_count(std::span<const Workload> workloads,
                                      FaultCountBasis basis) {
    if (workloads.empty()) {
        throw InvalidArgument("analysis needs at least one circuit");
    }
    const std::size_t g = fault_count(workloads.front().circuit, basis);
    for (const auto &w : workloads) {
        if (fault_count(w.circuit, basis) != g) {
            throw InvalidArgument(
                "ensemble circuits must share one gate count");
        }
    }
    return g;
}

} // namespace detail

/**
 * Expected success probability at the given rates. With E(N) = G p <= 1 the
 * exhaustive single-fault sweep is scaled by the linearized formula; above
 * one expected fault the mean over n_runs Monte Carlo trajectories is used.
 */
[[nodiscard]] inline AnalysisResult
success_probability(std::span<const Workload> workloads,
                    const ErrorRates &rates, std::uint64_t master_seed,
                    const AnalysisOptions &options = {}) {
    require_valid(rates);
    const std::size_t g =
        detail::common_fault_count(workloads, options.fault_count_basis);
    AnalysisResult result;
    result.expected_errors = static_cast<double>(g) * rates.total();
    const auto n = static_cast<double>(workloads.size());

    if (result.expected_errors <= 1.0) {
        result.regime = Regime::Exhaustive;
        double value = 0.0;
        double p_r = 0.0;
        double s1 = 0.0;
        std::size_t runs = 0;
        for (const auto &w : workloads) {
            const auto summary =
                exhaustive_sweep(w.circuit, w.criterion, options.simulation);
            value += linearized_success(summary, g, rates);
            p_r += summary.reference_success;
            s1 += summary.one_error_success();
            runs += summary.per_instance.size();
        }
        result.value = std::clamp(value / n, 0.0, 1.0);
        result.reference_success = p_r / n;
        result.one_error_success = s1 / n;
        result.samples = runs;
        return result;
    }

    result.regime = Regime::MonteCarlo;
    const auto point =
        detail::monte_carlo_point(workloads, rates, master_seed, options);
    result.value = point.mean;
    result.standard_error = point.standard_error;
    result.samples = point.runs;
    return result;
}

[[nodiscard]] inline AnalysisResult
success_probability(const Circuit &circuit, const ErrorRates &rates,
                    const SuccessCriterion &criterion,
                    std::uint64_t master_seed,
                    const AnalysisOptions &options = {}) {
    const Workload w{circuit, criterion};
    return success_probability(std::span<const Workload>(&w, 1), rates,
                               master_seed, options);
}

/**
 * Largest uniform rate whose success still matches `target`.
 *
 * When the target is at least the one-average-fault success S_1 the closed
 * form applies and the rate is below 1/G. Otherwise the rate is bracketed
 * by doubling upward from 1/G and then bisected,
 * each step a Monte Carlo estimate with the same master seed, until
 * |success - target| <= max(tolerance, 2 stderr).
 */
[[nodiscard]] inline AnalysisResult
tolerable_error_rate(std::span<const Workload> workloads, double target,
                     std::uint64_t master_seed,
                     const AnalysisOptions &options = {}) {
    detail::require_target(target);
    const std::size_t g =
        detail::common_fault_count(workloads, options.fault_count_basis);
    const auto n = static_cast<double>(workloads.size());

    double p_r = 0.0;
    double s1 = 0.0;
    std::size_t sweep_runs = 0;
    for (const auto &w : workloads) {
        const auto summary =
            exhaustive_sweep(w.circuit, w.criterion, options.simulation);
        p_r += summary.reference_success;
        s1 += summary.one_error_success();
        sweep_runs += summary.per_instance.size();
    }
    p_r /= n;
    s1 /= n;
    if (target > p_r) {
        throw Unreachable(target, p_r);
    }

    AnalysisResult result;
    result.reference_success = p_r;
    result.one_error_success = s1;

    if (g == 0) {
        // nothing can fail
        result.value = 1.0;
        result.regime = Regime::ClosedForm;
        result.samples = sweep_runs;
        return result;
    }

    const double inv_g = 1.0 / static_cast<double>(g);
    if (s1 < p_r && target >= s1) {
        result.regime = Regime::ClosedForm;
        result.value = closed_form_rate(target, p_r, s1, g);
        if (target > s1 && !(result.value < inv_g)) {
            throw std::logic_error("closed-form tolerable rate not below 1/G");
        }
        result.expected_errors = static_cast<double>(g) * result.value;
        result.samples = sweep_runs;
        return result;
    }

    result.regime = Regime::Search;
    std::vector<SearchStep> trace;
    std::size_t runs = sweep_runs;
    auto evaluate = [&](double rate) {
        if (trace.size() >= options.max_evaluations) {
            throw NoConvergence(options.max_evaluations);
        }
        const auto point = detail::monte_carlo_point(
            workloads, ErrorRates::uniform(rate), master_seed, options);
        runs += point.runs;
        trace.push_back({rate, point.mean, point.standard_error});
        return trace.back();
    };
    auto matched = [&](const SearchStep &s) {
        return std::abs(s.success - target) <=
               std::max(options.tolerance, 2.0 * s.standard_error);
    };
    auto finish = [&](const SearchStep &s) {
        result.value = s.rate;
        result.standard_error = s.standard_error;
        result.expected_errors = static_cast<double>(g) * s.rate;
        result.samples = runs;
        result.search_trace = trace;
        return result;
    };

    // success at rate 0 is P_R >= target, so lo always satisfies the target
    double lo = 0.0;
    double hi = std::min(1.0, inv_g);
    for (;;) {
        const auto step = evaluate(hi);
        if (matched(step)) {
            return finish(step);
        }
        if (step.success < target) {
            break;
        }
        if (hi >= 1.0) {
            // the target holds even when every gate-qubit faults
            return finish(step);
        }
        lo = hi;
        hi = std::min(1.0, 2.0 * hi);
    }
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        const auto step = evaluate(mid);
        if (matched(step)) {
            return finish(step);
        }
        if (step.success > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

[[nodiscard]] inline AnalysisResult
tolerable_error_rate(const Circuit &circuit, double target,
                     const SuccessCriterion &criterion,
                     std::uint64_t master_seed,
                     const AnalysisOptions &options = {}) {
    const Workload w{circuit, criterion};
    return tolerable_error_rate(std::span<const Workload>(&w, 1), target,
                                master_seed, options);
}

struct FitPoint {
    double gates = 0.0;
    double rate = 0.0;
};

enum class FitModel : std::uint8_t { ThroughOrigin, Affine };

/// rate(G) = coefficient / G + intercept (intercept is 0 through the origin).
struct ExtrapolationFit {
    FitModel model = FitModel::ThroughOrigin;
    double coefficient = 0.0;
    double intercept = 0.0;
    double mse = 0.0;
    std::vector<FitPoint> points;

    [[nodiscard]] double predict(double gates) const {
        return coefficient / gates + intercept;
    }
};

/// Least-squares fit of rate against 1/G, evaluated at `target_gates`.
[[nodiscard]] inline std::pair<double, ExtrapolationFit>
extrapolate(std::span<const FitPoint> points, double target_gates,
            FitModel model = FitModel::ThroughOrigin) {
    if (points.size() < 2) {
        throw InvalidArgument("extrapolation needs at least two points");
    }
    if (!(target_gates > 0.0)) {
        throw InvalidArgument("target gate count must be positive");
    }
    bool all_equal = true;
    for (const auto &p : points) {
        if (!(p.gates > 0.0) || !(p.rate >= 0.0)) {
            throw InvalidArgument(
                "fit points need positive gate counts and non-negative rates");
        }
        all_equal = all_equal && p.gates == points.front().gates;
    }
    if (all_equal) {
        throw DegenerateFit("all points share one gate count");
    }

    ExtrapolationFit fit;
    fit.model = model;
    fit.points.assign(points.begin(), points.end());
    if (model == FitModel::ThroughOrigin) {
        double sxy = 0.0;
        double sxx = 0.0;
        for (const auto &p : points) {
            const double x = 1.0 / p.gates;
            sxy += x * p.rate;
            sxx += x * x;
        }
        fit.coefficient = sxy / sxx;
    } else {
        const auto n = static_cast<double>(points.size());
        double mx = 0.0;
        double my = 0.0;
        for (const auto &p : points) {
            mx += 1.0 / p.gates;
            my += p.rate;
        }
        mx /= n;
        my /= n;
        double sxy = 0.0;
        double sxx = 0.0;
        for (const auto &p : points) {
            const double dx = 1.0 / p.gates - mx;
            sxy += dx * (p.rate - my);
            sxx += dx * dx;
        }
        fit.coefficient = sxy / sxx;
        fit.intercept = my - fit.coefficient * mx;
    }
    double sse = 0.0;
    for (const auto &p : points) {
        const double r = p.rate - fit.predict(p.gates);
        sse += r * r;
    }
    fit.mse = sse / static_cast<double>(points.size());
    const double prediction = fit.predict(target_gates);
    return {prediction, std::move(fit)};
}

/// Default number of random circuits per quantum volume data point.
inline constexpr std::size_t kDefaultQvCircuits = 200;

/// QV circuit i of a data point is generated with derive_seed(~master, i).
[[nodiscard]] inline std::vector<Workload>
qv_workloads(std::size_t width, std::size_t n_circuits,
             std::uint64_t master_seed, bool decompose = false) {
    if (n_circuits < 1) {
        throw InvalidArgument("quantum volume needs at least one circuit");
    }
    BenchmarkSpec spec;
    spec.family = Family::QV;
    spec.width = width;
    spec.decompose_qv = decompose;
    std::vector<Workload> out;
    out.reserve(n_circuits);
    for (std::size_t i = 0; i < n_circuits; ++i) {
        out.push_back({generate(spec, derive_seed(~master_seed, i)),
                       HeavyOutput{}});
    }
    return out;
}

/// Mean heavy-output success over freshly generated QV circuits.
[[nodiscard]] inline AnalysisResult
qv_success(std::size_t width, const ErrorRates &rates,
           std::size_t n_circuits, std::uint64_t master_seed,
           const AnalysisOptions &options = {}, bool decompose = false) {
    const auto workloads =
        qv_workloads(width, n_circuits, master_seed, decompose);
    return success_probability(workloads, rates, master_seed, options);
}

[[nodiscard]] inline AnalysisResult
qv_tolerable_error_rate(std::size_t width, double target,
                        std::size_t n_circuits, std::uint64_t master_seed,
                        const AnalysisOptions &options = {},
                        bool decompose = false) {
    const auto workloads =
        qv_workloads(width, n_circuits, master_seed, decompose);
    return tolerable_error_rate(workloads, target, master_seed, options);
}

} // namespace noisetol
