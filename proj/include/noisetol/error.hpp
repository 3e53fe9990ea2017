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
 * Exception types thrown by noisetol. Every error carries the message the
 * CLI prints verbatim before exiting with a non-zero code.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noisetol {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

class WidthTooLarge : public Error {
  public:
    WidthTooLarge(std::size_t width, std::size_t budget_bytes)
        : Error("WidthTooLarge: " + std::to_string(width) +
                " qubits exceed the state-vector memory budget of " +
                std::to_string(budget_bytes) + " bytes") {}
};

class QubitOutOfRange : public Error {
  public:
    QubitOutOfRange(std::size_t qubit, std::size_t width)
        : Error("QubitOutOfRange: qubit " + std::to_string(qubit) +
                " in a " + std::to_string(width) + "-qubit state") {}
};

class InvalidInjection : public Error {
  public:
    explicit InvalidInjection(const std::string &what)
        : Error("InvalidInjection: " + what) {}
};

class InvalidCircuit : public Error {
  public:
    explicit InvalidCircuit(const std::string &what)
        : Error("InvalidCircuit: " + what) {}
};

class WidthMismatch : public Error {
  public:
    WidthMismatch(std::size_t expected, std::size_t actual)
        : Error("WidthMismatch: expected width " + std::to_string(expected) +
                ", got " + std::to_string(actual)) {}
};

class UnsupportedGate : public Error {
  public:
    explicit UnsupportedGate(const std::string &what)
        : Error("UnsupportedGate: " + what) {}
};

class InvalidSpec : public Error {
  public:
    explicit InvalidSpec(const std::string &what)
        : Error("InvalidSpec: " + what) {}
};

class NoSingleOutcome : public Error {
  public:
    explicit NoSingleOutcome(const std::string &family)
        : Error("NoSingleOutcome: " + family +
                " circuits have no single correct outcome") {}
};

class RateInvalid : public Error {
  public:
    explicit RateInvalid(const std::string &what)
        : Error("RateInvalid: " + what) {}
};

class Unreachable : public Error {
  public:
    Unreachable(double target, double reference)
        : Error("Unreachable: target success " + std::to_string(target) +
                " exceeds the noise-free success " +
                std::to_string(reference)) {}
};

class NoConvergence : public Error {
  public:
    explicit NoConvergence(std::size_t evaluations)
        : Error("NoConvergence: rate search did not match the target within " +
                std::to_string(evaluations) + " evaluations") {}
};

class DegenerateFit : public Error {
  public:
    explicit DegenerateFit(const std::string &what)
        : Error("DegenerateFit: " + what) {}
};

} // namespace noisetol
