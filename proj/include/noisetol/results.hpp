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
 * Result records and their CSV / JSON serialization.
 *
 * Both formats carry the same fields in the same order:
 *   mode, family, width, G, k, m, rate_or_target, value, stderr, regime,
 *   seed, samples
 * JSON objects additionally carry `tool_version`, `config` and, for fit
 * records, a `fit` object. Numbers use the shortest round-trip form, so the
 * output is byte-stable for identical inputs.
 */
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace noisetol {

inline constexpr std::string_view kToolVersion = "noisetol 0.1.0";

struct FitSummary {
    std::string model;
    double coefficient = 0.0;
    double intercept = 0.0;
    double mse = 0.0;
};

struct Record {
    std::string mode;
    std::string family;
    std::optional<std::size_t> width;
    std::optional<std::size_t> gates; // G
    std::optional<std::size_t> single_qubit_gates; // k
    std::optional<std::size_t> two_qubit_gates;    // m
    double rate_or_target = 0.0;
    double value = 0.0;
    std::optional<double> standard_error;
    std::optional<double> expected_errors; // E(N); JSON only
    std::string regime;
    std::uint64_t seed = 0;
    std::optional<std::size_t> samples;
    std::optional<FitSummary> fit;
};

struct RunInfo {
    std::string tool_version{kToolVersion};
    std::string config;
};

enum class OutputFormat : std::uint8_t { Json, Csv };

inline constexpr std::string_view kCsvHeader =
    "mode,family,width,G,k,m,rate_or_target,value,stderr,regime,seed,samples";

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

template <class T> std::string format_optional(const std::optional<T> &v) {
    if (!v) {
        return {};
    }
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*v);
    } else {
        return std::to_string(*v);
    }
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

template <class Json, class T>
void put_optional(Json &j, const char *key, const std::optional<T> &v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

} // namespace detail

[[nodiscard]] inline std::string to_csv(const std::vector<Record> &records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &r : records) {
        out += detail::csv_field(r.mode) + ',' + detail::csv_field(r.family) +
               ',' + detail::format_optional(r.width) + ',' +
               detail::format_optional(r.gates) + ',' +
               detail::format_optional(r.single_qubit_gates) + ',' +
               detail::format_optional(r.two_qubit_gates) + ',' +
               detail::format_double(r.rate_or_target) + ',' +
               detail::format_double(r.value) + ',' +
               detail::format_optional(r.standard_error) + ',' +
               detail::csv_field(r.regime) + ',' + std::to_string(r.seed) +
               ',' + detail::format_optional(r.samples) + '\n';
    }
    return out;
}

[[nodiscard]] inline std::string to_json(const std::vector<Record> &records,
                                         const RunInfo &info) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &r : records) {
        nlohmann::ordered_json j;
        j["mode"] = r.mode;
        j["family"] = r.family;
        detail::put_optional(j, "width", r.width);
        detail::put_optional(j, "G", r.gates);
        detail::put_optional(j, "k", r.single_qubit_gates);
        detail::put_optional(j, "m", r.two_qubit_gates);
        j["rate_or_target"] = r.rate_or_target;
        j["value"] = r.value;
        detail::put_optional(j, "stderr", r.standard_error);
        j["regime"] = r.regime;
        detail::put_optional(j, "expected_errors", r.expected_errors);
        j["seed"] = r.seed;
        detail::put_optional(j, "samples", r.samples);
        j["tool_version"] = info.tool_version;
        j["config"] = info.config;
        if (r.fit) {
            j["fit"] = {{"model", r.fit->model},
                        {"coefficient", r.fit->coefficient},
                        {"intercept", r.fit->intercept},
                        {"mse", r.fit->mse}};
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

[[nodiscard]] inline std::string render(const std::vector<Record> &records,
                                        OutputFormat format,
                                        const RunInfo &info) {
    return format == OutputFormat::Csv ? to_csv(records)
                                       : to_json(records, info);
}

/// Writes records to `path` ("-" is standard output).
inline void write_results(const std::vector<Record> &records,
                          OutputFormat format, const std::string &path,
                          const RunInfo &info = {}) {
    if (records.empty()) {
        throw InvalidArgument("no records to write");
    }
    const auto text = render(records, format, info);
    if (path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error("IOError: cannot open '" + path + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw Error("IOError: failed writing '" + path + "'");
    }
}

} // namespace noisetol
