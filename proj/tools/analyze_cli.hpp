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
 * The `analyze` command line front end. Kept in a header so tests can drive
 * it in-process.
 *
 * Exit codes: 0 success, 1 runtime failure, 2 usage error.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisetol/noisetol.hpp"

namespace noisetol::cli {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string qasm_path;
    std::size_t width = 0;
    std::string widths;
    std::string hidden_string;
    std::optional<std::uint64_t> marked;
    std::optional<std::size_t> iterations;
    std::size_t depth = 1;
    std::optional<double> rate;
    std::vector<double> rates;
    std::optional<double> target;
    std::string criterion = "auto";
    std::string outcome;
    std::uint64_t seed = 0;
    std::size_t runs = kDefaultRuns;
    std::size_t circuits = kDefaultQvCircuits;
    std::size_t max_evaluations = 60;
    std::string format = "json";
    std::string output = "-";
    std::size_t workers = 0;
    std::size_t memory_budget_mib = 1024;
    bool decompose_qv = false;
    std::string fault_basis = "gates";
    std::optional<double> target_gates;
    std::string points_path;
    bool affine = false;
};

namespace detail {

inline std::vector<std::size_t> width_list(const Options &o) {
    if (!o.widths.empty()) {
        const auto colon = o.widths.find(':');
        try {
            if (colon == std::string::npos) {
                return {std::stoul(o.widths)};
            }
            const auto lo = std::stoul(o.widths.substr(0, colon));
            const auto hi = std::stoul(o.widths.substr(colon + 1));
            if (lo > hi) {
                throw UsageError("--widths range is empty: " + o.widths);
            }
            std::vector<std::size_t> out;
            for (auto w = lo; w <= hi; ++w) {
                out.push_back(w);
            }
            return out;
        } catch (const std::logic_error &) {
            throw UsageError("--widths expects N or LO:HI, got " + o.widths);
        }
    }
    if (o.width != 0) {
        return {o.width};
    }
    if (!o.qasm_path.empty()) {
        return {0}; // width comes from the file
    }
    throw UsageError("one of --width or --widths is required");
}

inline std::string default_hidden_string(std::size_t width) {
    std::string s;
    for (std::size_t i = 0; i + 1 < width; ++i) {
        s.push_back(i % 2 == 0 ? '1' : '0');
    }
    return s;
}

inline SuccessCriterion pick_criterion(const Options &o,
                                       const std::optional<BenchmarkSpec> &spec,
                                       std::size_t width) {
    const auto &c = o.criterion;
    if (c == "fidelity") {
        return Fidelity{};
    }
    if (c == "heavy-output") {
        return HeavyOutput{};
    }
    if (c == "correct-outcome" || (c == "auto" && !o.outcome.empty())) {
        if (!o.outcome.empty()) {
            if (o.outcome.size() != width) {
                throw UsageError("--outcome must have " +
                                 std::to_string(width) + " bits");
            }
            return CorrectOutcome{o.outcome};
        }
        if (spec && (spec->family == Family::BV ||
                     spec->family == Family::Grover)) {
            return CorrectOutcome{correct_outcome(*spec)};
        }
        throw UsageError("correct-outcome criterion needs --outcome");
    }
    if (c == "auto") {
        return spec ? default_criterion(*spec) : SuccessCriterion{Fidelity{}};
    }
    throw UsageError("unknown criterion: " + c);
}

struct Subject {
    std::string family;
    std::size_t width = 0;
    std::vector<Workload> workloads;
    bool ensemble = false;
};

inline Subject build_subject(const Options &o, std::size_t width) {
    Subject s;
    if (!o.qasm_path.empty()) {
        std::ifstream in(o.qasm_path, std::ios::binary);
        if (!in) {
            throw Error("IOError: cannot read '" + o.qasm_path + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        std::vector<qasm::Warning> warnings;
        auto circuit = qasm::parse(buf.str(), &warnings);
        for (const auto &w : warnings) {
            std::cerr << o.qasm_path << ":" << w.line << ": warning: "
                      << w.message << "\n";
        }
        s.family = "qasm";
        s.width = circuit.width;
        auto criterion = pick_criterion(o, std::nullopt, circuit.width);
        s.workloads.push_back({std::move(circuit), std::move(criterion)});
        return s;
    }
    if (o.family.empty()) {
        throw UsageError("one of --family or --qasm is required");
    }
    const auto family = parse_family(o.family);
    if (!family) {
        throw UsageError("unknown family: " + o.family);
    }
    s.family = o.family;
    s.width = width;
    BenchmarkSpec spec;
    spec.family = *family;
    spec.width = width;
    spec.hidden_string = o.hidden_string.empty() && *family == Family::BV
                             ? default_hidden_string(width)
                             : o.hidden_string;
    spec.marked = o.marked;
    spec.iterations = o.iterations;
    spec.depth = o.depth;
    spec.decompose_qv = o.decompose_qv;
    if (*family == Family::QV) {
        if (o.criterion != "auto" && o.criterion != "heavy-output") {
            throw UsageError("qv circuits use the heavy-output criterion");
        }
        s.workloads = qv_workloads(width, o.circuits, o.seed, o.decompose_qv);
        s.ensemble = true;
        return s;
    }
    auto criterion = pick_criterion(o, spec, width);
    s.workloads.push_back({generate(spec, o.seed), std::move(criterion)});
    return s;
}

inline Record base_record(const std::string &mode, const Subject &s,
                          const Options &o) {
    const auto stats = circuit_stats(s.workloads.front().circuit);
    Record r;
    r.mode = mode;
    r.family = s.family;
    r.width = s.width;
    r.gates = stats.gate_count;
    r.single_qubit_gates = stats.single_qubit_gates;
    r.two_qubit_gates = stats.two_qubit_gates;
    r.seed = o.seed;
    return r;
}

inline void fill(Record &r, const AnalysisResult &a) {
    r.value = a.value;
    r.standard_error = a.standard_error;
    r.expected_errors = a.expected_errors;
    r.regime = std::string(regime_name(a.regime));
    r.samples = a.samples;
}

inline ErrorRates rates_from(const Options &o) {
    if (o.rate && !o.rates.empty()) {
        throw UsageError("give either --rate or --rates, not both");
    }
    if (o.rate) {
        return ErrorRates::uniform(*o.rate);
    }
    if (o.rates.size() == 3) {
        ErrorRates r{o.rates[0], o.rates[1], o.rates[2]};
        if (r.total() > 1.0) {
            throw UsageError("--rates must sum to at most 1");
        }
        return r;
    }
    throw UsageError("this mode needs --rate P or --rates PX,PZ,PY");
}

inline double target_from(const Options &o) {
    if (!o.target) {
        throw UsageError("this mode needs --target P");
    }
    if (o.rate || !o.rates.empty()) {
        throw UsageError("--target and --rate are mutually exclusive");
    }
    return *o.target;
}

inline AnalysisOptions analysis_options(const Options &o) {
    AnalysisOptions a;
    a.n_runs = o.runs;
    a.max_evaluations = o.max_evaluations;
    a.fault_count_basis = o.fault_basis == "locations"
                              ? FaultCountBasis::Locations
                              : FaultCountBasis::Gates;
    a.simulation.workers = o.workers;
    a.simulation.budget.bytes = o.memory_budget_mib << 20;
    return a;
}

inline std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

/// Canonical echo of everything that determines the results (worker count,
/// output path and format excluded).
inline std::string echo_config(const std::string &mode, const Options &o) {
    std::string s = mode;
    auto add = [&](const std::string &flag, const std::string &value) {
        s += " --" + flag + " " + value;
    };
    if (!o.qasm_path.empty()) {
        add("qasm", o.qasm_path);
    } else if (!o.family.empty()) {
        add("family", o.family);
    }
    if (!o.widths.empty()) {
        add("widths", o.widths);
    } else if (o.width != 0) {
        add("width", std::to_string(o.width));
    }
    if (!o.hidden_string.empty()) {
        add("hidden-string", o.hidden_string);
    }
    if (o.marked) {
        add("marked", std::to_string(*o.marked));
    }
    if (o.iterations) {
        add("iterations", std::to_string(*o.iterations));
    }
    if (o.family == "ryrz") {
        add("depth", std::to_string(o.depth));
    }
    if (o.rate) {
        add("rate", shortest(*o.rate));
    }
    if (!o.rates.empty()) {
        std::string r;
        for (std::size_t i = 0; i < o.rates.size(); ++i) {
            r += (i ? "," : "") + shortest(o.rates[i]);
        }
        add("rates", r);
    }
    if (o.target) {
        add("target", shortest(*o.target));
    }
    add("criterion", o.criterion);
    if (!o.outcome.empty()) {
        add("outcome", o.outcome);
    }
    add("seed", std::to_string(o.seed));
    add("runs", std::to_string(o.runs));
    add("fault-basis", o.fault_basis);
    if (o.family == "qv") {
        add("circuits", std::to_string(o.circuits));
    }
    if (o.decompose_qv) {
        s += " --decompose-qv";
    }
    if (mode == "tolerable" || mode == "extrapolate") {
        add("max-evaluations", std::to_string(o.max_evaluations));
    }
    if (o.target_gates) {
        add("target-gates", shortest(*o.target_gates));
    }
    if (!o.points_path.empty()) {
        add("points", o.points_path);
    }
    if (o.affine) {
        s += " --affine";
    }
    add("memory-budget-mib", std::to_string(o.memory_budget_mib));
    return s;
}

inline std::vector<Record> run_success(const std::string &mode,
                                       const Options &o) {
    const auto rates = rates_from(o);
    std::vector<Record> out;
    for (const auto w : width_list(o)) {
        const auto subject = build_subject(o, w);
        auto r = base_record(mode, subject, o);
        r.rate_or_target = rates.total();
        fill(r, success_probability(subject.workloads, rates, o.seed,
                                    analysis_options(o)));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<Record> run_tolerable(const std::string &mode,
                                         const Options &o) {
    const double target = target_from(o);
    std::vector<Record> out;
    for (const auto w : width_list(o)) {
        const auto subject = build_subject(o, w);
        auto r = base_record(mode, subject, o);
        r.rate_or_target = target;
        fill(r, tolerable_error_rate(subject.workloads, target, o.seed,
                                     analysis_options(o)));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<FitPoint> read_points(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("IOError: cannot read '" + path + "'");
    }
    auto split = [](const std::string &line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("points file '" + path + "' is empty");
    }
    const auto header = split(line);
    std::ptrdiff_t g_col = -1;
    std::ptrdiff_t v_col = -1;
    std::ptrdiff_t regime_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "G") {
            g_col = static_cast<std::ptrdiff_t>(i);
        } else if (header[i] == "value") {
            v_col = static_cast<std::ptrdiff_t>(i);
        } else if (header[i] == "regime") {
            regime_col = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (g_col < 0 || v_col < 0) {
        throw Error("points file '" + path + "' needs G and value columns");
    }
    std::vector<FitPoint> points;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line);
        const auto need = static_cast<std::size_t>(std::max(g_col, v_col));
        if (cells.size() <= need) {
            throw Error(path + ":" + std::to_string(line_no) +
                        ": too few columns");
        }
        if (regime_col >= 0 &&
            static_cast<std::size_t>(regime_col) < cells.size() &&
            cells[static_cast<std::size_t>(regime_col)] == "FIT") {
            continue;
        }
        try {
            points.push_back({std::stod(cells[static_cast<std::size_t>(g_col)]),
                              std::stod(cells[static_cast<std::size_t>(v_col)])});
        } catch (const std::logic_error &) {
            throw Error(path + ":" + std::to_string(line_no) +
                        ": non-numeric G or value");
        }
    }
    return points;
}

inline std::vector<Record> run_extrapolate(const Options &o,
                                           std::ostream &err) {
    if (!o.target_gates) {
        throw UsageError("extrapolate needs --target-gates G");
    }
    std::vector<Record> out;
    std::vector<FitPoint> points;
    if (!o.points_path.empty()) {
        points = read_points(o.points_path);
    } else {
        out = run_tolerable("extrapolate", o);
        for (const auto &r : out) {
            points.push_back({static_cast<double>(*r.gates), r.value});
        }
    }
    const auto model = o.affine ? FitModel::Affine : FitModel::ThroughOrigin;
    const auto [prediction, fit] = extrapolate(points, *o.target_gates, model);
    Record r;
    r.mode = "extrapolate";
    r.family = !o.qasm_path.empty() ? "qasm" : o.family;
    r.gates = static_cast<std::size_t>(*o.target_gates);
    r.rate_or_target = o.target.value_or(0.0);
    r.value = prediction;
    r.regime = "FIT";
    r.seed = o.seed;
    r.fit = FitSummary{o.affine ? "affine" : "through-origin",
                       fit.coefficient, fit.intercept, fit.mse};
    err << "fit: rate = " << fit.coefficient << " / G"
        << (o.affine ? " + " + shortest(fit.intercept) : std::string{})
        << ", mse = " << fit.mse << ", points = " << points.size() << "\n";
    out.push_back(std::move(r));
    return out;
}

inline void add_common(CLI::App &sub, Options &o) {
    sub.add_option("--family", o.family,
                   "Benchmark family: qft, bv, grover, hlf, qv, ryrz")
        ->check(CLI::IsMember({"qft", "bv", "grover", "hlf", "qv", "ryrz"}));
    sub.add_option("--qasm", o.qasm_path, "QASM-subset circuit file")
        ->excludes("--family");
    sub.add_option("--width", o.width, "Qubit count")->check(CLI::PositiveNumber);
    sub.add_option("--widths", o.widths, "Width or inclusive range LO:HI");
    sub.add_option("--hidden-string", o.hidden_string,
                   "BV hidden string (width-1 bits, MSB first)");
    sub.add_option("--marked", o.marked, "Grover marked element");
    sub.add_option("--iterations", o.iterations, "Grover iterations");
    sub.add_option("--depth", o.depth, "RYRZ depth")->check(CLI::PositiveNumber);
    sub.add_option("--criterion", o.criterion,
                   "auto, fidelity, correct-outcome or heavy-output")
        ->check(CLI::IsMember(
            {"auto", "fidelity", "correct-outcome", "heavy-output"}));
    sub.add_option("--outcome", o.outcome,
                   "Expected outcome bitstring, MSB first");
    sub.add_option("--seed", o.seed, "Master seed");
    sub.add_option("--runs", o.runs, "Monte Carlo runs per point")
        ->check(CLI::PositiveNumber);
    sub.add_option("--circuits", o.circuits, "QV circuits per data point")
        ->check(CLI::PositiveNumber);
    sub.add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--output", o.output, "Output path, - for stdout");
    sub.add_option("--workers", o.workers,
                   "Worker threads, 0 = hardware concurrency");
    sub.add_option("--memory-budget-mib", o.memory_budget_mib,
                   "State-vector memory budget in MiB")
        ->check(CLI::PositiveNumber);
    sub.add_flag("--decompose-qv", o.decompose_qv,
                 "Expand QV blocks into U1Q/RY/RZ/CX gates");
    sub.add_option("--fault-basis", o.fault_basis,
                   "Expected fault count per unit rate: gates (G) or "
                   "locations (k + 2m)")
        ->check(CLI::IsMember({"gates", "locations"}));
}

inline void add_rates(CLI::App &sub, Options &o) {
    sub.add_option("--rate", o.rate, "Uniform Pauli error rate p (p/3 each)")
        ->check(CLI::Range(0.0, 1.0));
    sub.add_option("--rates", o.rates, "Pauli rates PX,PZ,PY")
        ->delimiter(',')
        ->expected(3)
        ->check(CLI::Range(0.0, 1.0))
        ->excludes("--rate");
}

inline const CLI::Validator kOpenUnit(
    [](std::string &s) -> std::string {
        try {
            const double v = std::stod(s);
            if (v > 0.0 && v < 1.0) {
                return {};
            }
        } catch (const std::logic_error &) {
        }
        return "value must lie strictly between 0 and 1";
    },
    "(0,1)");

inline void add_target(CLI::App &sub, Options &o) {
    sub.add_option("--target", o.target, "Target success probability")
        ->check(kOpenUnit);
    sub.add_option("--max-evaluations", o.max_evaluations,
                   "Monte Carlo evaluations allowed in the rate search")
        ->check(CLI::PositiveNumber);
}

} // namespace detail

/// Runs the CLI; results go to the --output path, diagnostics to `err`.
inline int run(int argc, const char *const *argv, std::ostream &err = std::cerr) {
    CLI::App app{"Success probability and tolerable Pauli error rate of "
                 "quantum circuits",
                 "analyze"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options o;

    auto *success = app.add_subcommand(
        "success", "Success probability at a Pauli error rate");
    detail::add_common(*success, o);
    detail::add_rates(*success, o);

    auto *tolerable = app.add_subcommand(
        "tolerable", "Tolerable uniform error rate for a target success");
    detail::add_common(*tolerable, o);
    detail::add_target(*tolerable, o);

    auto *sweep = app.add_subcommand(
        "sweep", "Success probability across widths at a fixed rate");
    detail::add_common(*sweep, o);
    detail::add_rates(*sweep, o);

    auto *extrap = app.add_subcommand(
        "extrapolate", "Fit tolerable rates against 1/G and predict at G*");
    detail::add_common(*extrap, o);
    detail::add_target(*extrap, o);
    extrap->add_option("--target-gates", o.target_gates,
                       "Gate count to predict at")
        ->check(CLI::PositiveNumber);
    extrap->add_option("--points", o.points_path,
                       "CSV with G and value columns instead of measuring");
    extrap->add_flag("--affine", o.affine, "Fit a/G + b instead of a/G");

    auto *qv = app.add_subcommand(
        "qv", "Mean heavy-output success of random QV circuits");
    detail::add_common(*qv, o);
    detail::add_rates(*qv, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e, std::cout, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, std::cout, err);
        return 2;
    }

    try {
        std::vector<Record> records;
        std::string mode;
        if (success->parsed()) {
            mode = "success";
            if (o.widths.find(':') != std::string::npos) {
                throw UsageError("success takes a single width; use sweep");
            }
            records = detail::run_success(mode, o);
        } else if (tolerable->parsed()) {
            mode = "tolerable";
            records = detail::run_tolerable(mode, o);
        } else if (sweep->parsed()) {
            mode = "sweep";
            records = detail::run_success(mode, o);
        } else if (extrap->parsed()) {
            mode = "extrapolate";
            records = detail::run_extrapolate(o, err);
        } else {
            mode = "qv";
            if (!o.qasm_path.empty() || (!o.family.empty() && o.family != "qv")) {
                throw UsageError("qv mode generates its own circuits");
            }
            o.family = "qv";
            records = detail::run_success(mode, o);
        }
        const auto format =
            o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        write_results(records, format, o.output,
                      RunInfo{std::string(kToolVersion),
                              detail::echo_config(mode, o)});
        return 0;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace noisetol::cli
