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
 * Reader and writer for a static subset of OpenQASM 2.0.
 *
 * Accepted: the `OPENQASM 2.0;` header, exactly one `qreg`, indexed gate
 * statements over {h, x, y, z, s, t, rx, ry, rz, cx, cz, swap}, `//` comments
 * and arbitrary whitespace. Rotation angles are constant expressions over
 * numbers and `pi` with + - * / ^, unary minus, parentheses and the functions
 * sin, cos, tan, exp, ln, sqrt. `include`, `creg`, `measure` and `barrier`
 * statements are skipped with a warning. Everything else (gate definitions,
 * conditionals, reset, register broadcast) is a ParseError.
 */
#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace noisetol::qasm {

/// Largest register the reader accepts.
inline constexpr std::size_t kMaxRegisterSize = 1U << 20;

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, std::string message,
               std::string snippet)
        : Error("ParseError at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message +
                (snippet.empty() ? std::string{} : " near '" + snippet + "'")),
          line_(line), column_(column), message_(std::move(message)),
          snippet_(std::move(snippet)) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string &message() const noexcept {
        return message_;
    }
    [[nodiscard]] const std::string &snippet() const noexcept {
        return snippet_;
    }

  private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string snippet_;
};

struct Warning {
    std::size_t line = 0;
    std::string message;
};

namespace detail {

enum class Tok : std::uint8_t { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        const char c = src_[pos_];
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalpha(uc) || c == '_') {
            t.kind = Tok::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                t.text.push_back(advance());
            }
        } else if (std::isdigit(uc) ||
                   (c == '.' && pos_ + 1 < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            t.kind = Tok::Number;
            lex_number(t.text);
        } else if (c == '"') {
            t.kind = Tok::String;
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"' &&
                   src_[pos_] != '\n') {
                t.text.push_back(advance());
            }
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw error_at(t.line, t.column, "unterminated string",
                               t.text);
            }
            advance();
        } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            t.kind = Tok::Arrow;
            t.text = "->";
            advance();
            advance();
        } else if (std::string_view(";,[]()+-*/^{}=").find(c) !=
                   std::string_view::npos) {
            t.kind = Tok::Symbol;
            t.text.push_back(advance());
        } else {
            throw error_at(t.line, t.column, "unexpected character",
                           printable(c));
        }
        return t;
    }

    [[nodiscard]] ParseError error_at(std::size_t line, std::size_t column,
                                      std::string message,
                                      std::string snippet) const {
        return {line, column, std::move(message), std::move(snippet)};
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    static std::string printable(char c) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isprint(uc)) {
            return std::string(1, c);
        }
        static constexpr char hex[] = "0123456789abcdef";
        return std::string("\\x") + hex[uc >> 4] + hex[uc & 0xF];
    }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() &&
                       src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void lex_number(std::string &out) {
        auto digits = [&] {
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                out.push_back(advance());
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            out.push_back(advance());
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t save_pos = pos_;
            const std::size_t save_col = column_;
            std::string exp(1, advance());
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                exp.push_back(advance());
            }
            if (pos_ < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                out += exp;
                digits();
            } else {
                pos_ = save_pos;
                column_ = save_col;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct GateShape {
    std::string_view name;
    GateKind kind;
    bool has_angle;
};

inline constexpr GateShape kGateTable[] = {
    {"h", GateKind::H, false},     {"x", GateKind::X, false},
    {"y", GateKind::Y, false},     {"z", GateKind::Z, false},
    {"s", GateKind::S, false},     {"t", GateKind::T, false},
    {"rx", GateKind::RX, true},    {"ry", GateKind::RY, true},
    {"rz", GateKind::RZ, true},    {"cx", GateKind::CX, false},
    {"cz", GateKind::CZ, false},   {"swap", GateKind::SWAP, false},
};

class Parser {
  public:
    Parser(std::string_view src, std::vector<Warning> *warnings)
        : lexer_(src), warnings_(warnings) {
        tok_ = lexer_.next();
    }

    Circuit parse() {
        if (!(tok_.kind == Tok::Ident && tok_.text == "OPENQASM")) {
            throw error(tok_, "missing OPENQASM header");
        }
        const Token header = take();
        if (tok_.kind != Tok::Number || (tok_.text != "2.0" && tok_.text != "2")) {
            throw error(tok_.kind == Tok::End ? header : tok_,
                        "unsupported OPENQASM version (expected 2.0)");
        }
        take();
        expect(";");

        Circuit circuit;
        bool have_qreg = false;
        while (tok_.kind != Tok::End) {
            const Token head = tok_;
            if (head.kind != Tok::Ident) {
                throw error(head, "expected a statement");
            }
            const std::string &word = head.text;
            if (word == "include") {
                take();
                if (tok_.kind != Tok::String) {
                    throw error(tok_, "include expects a file name string");
                }
                take();
                expect(";");
                warn(head, "include ignored; the standard gate names are built in");
            } else if (word == "qreg") {
                if (have_qreg) {
                    throw error(head, "only one qreg is supported");
                }
                take();
                reg_name_ = expect_ident();
                expect("[");
                const auto size = expect_index(kMaxRegisterSize);
                if (size == 0) {
                    throw error(head, "qreg must have at least one qubit");
                }
                expect("]");
                expect(";");
                circuit.width = size;
                have_qreg = true;
            } else if (word == "creg") {
                take();
                expect_ident();
                expect("[");
                expect_index(kMaxRegisterSize);
                expect("]");
                expect(";");
                warn(head, "creg ignored");
            } else if (word == "measure" || word == "barrier") {
                take();
                skip_to_semicolon();
                warn(head, word + " ignored");
            } else if (word == "gate" || word == "opaque" || word == "if" ||
                       word == "reset" || word == "U" || word == "CX") {
                throw error(head, "unsupported statement '" + word + "'");
            } else {
                if (!have_qreg) {
                    throw error(head, "gate before qreg declaration");
                }
                circuit.gates.push_back(parse_gate(circuit.width));
            }
        }
        if (!have_qreg) {
            throw error(tok_, "missing qreg declaration");
        }
        return circuit;
    }

  private:
    Token take() {
        Token t = std::move(tok_);
        tok_ = lexer_.next();
        return t;
    }

    [[nodiscard]] ParseError error(const Token &at, std::string message) const {
        return lexer_.error_at(at.line, at.column, std::move(message),
                               at.kind == Tok::End ? "end of input" : at.text);
    }

    void warn(const Token &at, std::string message) {
        if (warnings_ != nullptr) {
            warnings_->push_back({at.line, std::move(message)});
        }
    }

    void expect(std::string_view symbol) {
        if (!((tok_.kind == Tok::Symbol || tok_.kind == Tok::Arrow) &&
              tok_.text == symbol)) {
            throw error(tok_, "expected '" + std::string(symbol) + "'");
        }
        take();
    }

    bool accept(std::string_view symbol) {
        if (tok_.kind == Tok::Symbol && tok_.text == symbol) {
            take();
            return true;
        }
        return false;
    }

    std::string expect_ident() {
        if (tok_.kind != Tok::Ident) {
            throw error(tok_, "expected an identifier");
        }
        return take().text;
    }

    std::size_t expect_index(std::size_t limit) {
        const Token t = tok_;
        if (t.kind != Tok::Number ||
            t.text.find_first_not_of("0123456789") != std::string::npos) {
            throw error(t, "expected a non-negative integer");
        }
        std::size_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || value > limit) {
            throw error(t, "integer out of range");
        }
        take();
        return value;
    }

    void skip_to_semicolon() {
        while (!(tok_.kind == Tok::Symbol && tok_.text == ";")) {
            if (tok_.kind == Tok::End) {
                throw error(tok_, "expected ';'");
            }
            take();
        }
        take();
    }

    Gate parse_gate(std::size_t width) {
        const Token head = take();
        const GateShape *shape = nullptr;
        for (const auto &g : kGateTable) {
            if (g.name == head.text) {
                shape = &g;
            }
        }
        if (shape == nullptr) {
            throw error(head, "unknown gate '" + head.text + "'");
        }
        Gate gate;
        gate.kind = shape->kind;
        if (accept("(")) {
            if (!shape->has_angle) {
                throw error(head, "gate '" + head.text + "' takes no parameter");
            }
            gate.angle = expression();
            expect(")");
            if (!std::isfinite(gate.angle)) {
                throw error(head, "rotation angle is not finite");
            }
        } else if (shape->has_angle) {
            throw error(tok_, "gate '" + head.text + "' needs an angle");
        }

        std::vector<std::size_t> operands;
        operands.push_back(qubit_argument(head, width));
        while (accept(",")) {
            operands.push_back(qubit_argument(head, width));
        }
        if (operands.size() != arity(gate.kind)) {
            throw error(head, "gate '" + head.text + "' expects " +
                                  std::to_string(arity(gate.kind)) +
                                  " qubit(s), got " +
                                  std::to_string(operands.size()));
        }
        if (operands.size() == 2 && operands[0] == operands[1]) {
            throw error(head, "duplicate qubit");
        }
        for (std::size_t i = 0; i < operands.size(); ++i) {
            gate.qubits[i] = operands[i];
        }
        expect(";");
        return gate;
    }

    std::size_t qubit_argument(const Token &gate_token, std::size_t width) {
        const Token name = tok_;
        const auto reg = expect_ident();
        if (reg != reg_name_) {
            throw error(name, "unknown register '" + reg + "'");
        }
        if (!(tok_.kind == Tok::Symbol && tok_.text == "[")) {
            throw error(name, "register broadcast is not supported");
        }
        take();
        const Token index_tok = tok_;
        const auto index = expect_index(kMaxRegisterSize);
        expect("]");
        if (index >= width) {
            throw error(index_tok, "qubit index out of range in '" +
                                       gate_token.text + "'");
        }
        return index;
    }

    // expression := term (('+' | '-') term)*
    double expression(int depth = 0) {
        guard(depth);
        double v = term(depth + 1);
        for (;;) {
            if (accept("+")) {
                v += term(depth + 1);
            } else if (accept("-")) {
                v -= term(depth + 1);
            } else {
                return v;
            }
        }
    }

    double term(int depth) {
        guard(depth);
        double v = unary(depth + 1);
        for (;;) {
            if (accept("*")) {
                v *= unary(depth + 1);
            } else if (accept("/")) {
                v /= unary(depth + 1);
            } else {
                return v;
            }
        }
    }

    double unary(int depth) {
        guard(depth);
        if (accept("-")) {
            return -unary(depth + 1);
        }
        if (accept("+")) {
            return unary(depth + 1);
        }
        return power(depth + 1);
    }

    double power(int depth) {
        guard(depth);
        const double base = primary(depth + 1);
        if (accept("^")) {
            return std::pow(base, unary(depth + 1));
        }
        return base;
    }

    double primary(int depth) {
        guard(depth);
        const Token t = tok_;
        if (t.kind == Tok::Number) {
            take();
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(
                t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
                throw error(t, "malformed number");
            }
            return value;
        }
        if (accept("(")) {
            const double v = expression(depth + 1);
            expect(")");
            return v;
        }
        if (t.kind == Tok::Ident) {
            take();
            if (t.text == "pi") {
                return std::numbers::pi;
            }
            double (*fn)(double) = nullptr;
            if (t.text == "sin") {
                fn = [](double x) { return std::sin(x); };
            } else if (t.text == "cos") {
                fn = [](double x) { return std::cos(x); };
            } else if (t.text == "tan") {
                fn = [](double x) { return std::tan(x); };
            } else if (t.text == "exp") {
                fn = [](double x) { return std::exp(x); };
            } else if (t.text == "ln") {
                fn = [](double x) { return std::log(x); };
            } else if (t.text == "sqrt") {
                fn = [](double x) { return std::sqrt(x); };
            } else {
                throw error(t, "unknown identifier in expression");
            }
            expect("(");
            const double arg = expression(depth + 1);
            expect(")");
            return fn(arg);
        }
        throw error(t, "expected an expression");
    }

    void guard(int depth) const {
        if (depth > 200) {
            throw error(tok_, "expression nested too deeply");
        }
    }

    Lexer lexer_;
    Token tok_;
    std::string reg_name_;
    std::vector<Warning> *warnings_;
};

inline std::string format_angle(double angle) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), angle);
    return {buf, ptr};
}

} // namespace detail

/// Parses QASM source into a Circuit; ignored statements are appended to
/// `warnings` when it is non-null.
[[nodiscard]] inline Circuit parse(std::string_view text,
                                   std::vector<Warning> *warnings = nullptr) {
    return detail::Parser(text, warnings).parse();
}

/**
 * Canonical source for a circuit: header, `qreg q[n];`, one statement per
 * gate. Angles are written in shortest round-trip form, so parse(emit(c))
 * reproduces c exactly. Matrix gates throw UnsupportedGate.
 */
[[nodiscard]] inline std::string emit(const Circuit &circuit) {
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        if (is_matrix_gate(circuit.gates[i].kind)) {
            throw UnsupportedGate("gate " + std::to_string(i) + " (" +
                                  std::string(gate_name(circuit.gates[i].kind)) +
                                  ") has no QASM-subset form");
        }
    }
    require_valid(circuit);
    std::string out = "OPENQASM 2.0;\nqreg q[" + std::to_string(circuit.width) +
                      "];\n";
    for (const auto &gate : circuit.gates) {
        out += gate_name(gate.kind);
        if (is_rotation(gate.kind)) {
            out += "(" + detail::format_angle(gate.angle) + ")";
        }
        out += " q[" + std::to_string(gate.qubits[0]) + "]";
        if (gate.arity() == 2) {
            out += ",q[" + std::to_string(gate.qubits[1]) + "]";
        }
        out += ";\n";
    }
    return out;
}

} // namespace noisetol::qasm
