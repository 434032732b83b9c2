// Copyright 2026 the dsabre authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file qasm.hpp
 * @brief Minimal OpenQASM 2 subset for circuit ingestion.
 *
 * Supported: a single qreg; gates h x y z s sdg t tdg rx ry rz u cx swap cz;
 * `measure` and `barrier` are ignored, as are the OPENQASM header, includes
 * and cregs. `swap` is lowered to three CX. Anything else is a parse error
 * carrying the line number. Rotation parameters are kept as opaque label
 * text and must be numeric literals.
 */

#pragma once

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace dsabre {

struct ParsedCircuit {
    std::vector<Gate> gates;
    int n_logical = 0;
};

class QasmError : public std::runtime_error {
public:
    QasmError(int line, const std::string& what)
        : std::runtime_error("qasm parse error, line " + std::to_string(line) +
                             ": " + what) {}
};

namespace detail {

struct QasmStatement {
    std::string text;
    int line;
};

inline std::vector<QasmStatement> split_statements(const std::string& text) {
    std::vector<QasmStatement> out;
    std::string cur;
    int line = 1;
    int start_line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            if (cur.empty()) {
                start_line = line;
            } else {
                cur += ' ';
            }
            continue;
        }
        if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            --i;
            continue;
        }
        if (text[i] == ';' || text[i] == '{' || text[i] == '}') {
            if (!cur.empty()) out.push_back({cur, start_line});
            cur.clear();
            start_line = line;
            continue;
        }
        if (cur.empty() && std::isspace(static_cast<unsigned char>(text[i]))) {
            start_line = line;
            continue;
        }
        cur += text[i];
    }
    // Trailing garbage without ';' is reported against its line.
    std::string trimmed = cur;
    while (!trimmed.empty() &&
           std::isspace(static_cast<unsigned char>(trimmed.back()))) {
        trimmed.pop_back();
    }
    if (!trimmed.empty()) {
        throw QasmError(start_line, "statement missing ';': '" + trimmed + "'");
    }
    return out;
}

inline std::string trim(std::string s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

inline ParsedCircuit parse_qasm(const std::string& text) {
    static const std::set<std::string> k1q = {"h", "x",  "y",  "z",  "s", "sdg",
                                              "t", "tdg", "rx", "ry", "rz", "u"};
    static const std::set<std::string> k2q = {"cx", "cz", "swap"};

    ParsedCircuit result;
    std::string reg_name;
    bool have_qreg = false;

    auto statements = detail::split_statements(text);
    for (const auto& [raw, line] : statements) {
        const std::string stmt = detail::trim(raw);
        if (stmt.empty()) continue;

        // Head token: gate or keyword name, with optional (params).
        std::size_t i = 0;
        while (i < stmt.size() &&
               (std::isalnum(static_cast<unsigned char>(stmt[i])) ||
                stmt[i] == '_')) {
            ++i;
        }
        std::string head = stmt.substr(0, i);
        std::string params;
        if (i < stmt.size() && stmt[i] == '(') {
            auto close = stmt.find(')', i);
            if (close == std::string::npos) {
                throw QasmError(line, "unbalanced '(' in '" + stmt + "'");
            }
            params = stmt.substr(i + 1, close - i - 1);
            i = close + 1;
        }
        std::string rest = detail::trim(stmt.substr(i));

        if (head == "OPENQASM" || head == "include" || head == "creg" ||
            head == "barrier" || head == "measure") {
            continue;
        }
        if (head == "qreg") {
            if (have_qreg) {
                throw QasmError(line, "multiple qreg declarations");
            }
            auto lb = rest.find('[');
            auto rb = rest.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
                throw QasmError(line, "malformed qreg '" + rest + "'");
            }
            reg_name = detail::trim(rest.substr(0, lb));
            try {
                result.n_logical = std::stoi(rest.substr(lb + 1, rb - lb - 1));
            } catch (const std::exception&) {
                throw QasmError(line, "malformed qreg size");
            }
            if (result.n_logical <= 0) {
                throw QasmError(line, "qreg size must be positive");
            }
            have_qreg = true;
            continue;
        }

        const bool is1q = k1q.count(head) > 0;
        const bool is2q = k2q.count(head) > 0;
        if (!is1q && !is2q) {
            throw QasmError(line, "unsupported statement '" + head + "'");
        }
        if (!have_qreg) {
            throw QasmError(line, "gate before qreg declaration");
        }

        // Operands: reg[idx] separated by commas.
        std::vector<int> operands;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = detail::trim(tok);
            auto lb = tok.find('[');
            auto rb = tok.find(']');
            if (lb == std::string::npos || rb == std::string::npos ||
                detail::trim(tok.substr(0, lb)) != reg_name) {
                throw QasmError(line, "bad operand '" + tok + "'");
            }
            int idx = -1;
            try {
                idx = std::stoi(tok.substr(lb + 1, rb - lb - 1));
            } catch (const std::exception&) {
                throw QasmError(line, "bad operand index in '" + tok + "'");
            }
            if (idx < 0 || idx >= result.n_logical) {
                throw QasmError(line, "operand index out of range: " + tok);
            }
            operands.push_back(idx);
        }
        const int want = is1q ? 1 : 2;
        if (static_cast<int>(operands.size()) != want) {
            throw QasmError(line, head + " expects " + std::to_string(want) +
                                      " operand(s)");
        }
        std::string label = params.empty() ? head : head + "(" + params + ")";
        if (is1q) {
            result.gates.push_back(gate1q(label, operands[0]));
        } else if (head == "swap") {
            if (operands[0] == operands[1]) {
                throw QasmError(line, "swap on identical operands");
            }
            result.gates.push_back(gate2q("cx", operands[0], operands[1]));
            result.gates.push_back(gate2q("cx", operands[1], operands[0]));
            result.gates.push_back(gate2q("cx", operands[0], operands[1]));
        } else {
            if (operands[0] == operands[1]) {
                throw QasmError(line, head + " on identical operands");
            }
            result.gates.push_back(gate2q(label, operands[0], operands[1]));
        }
    }
    if (!have_qreg) {
        throw QasmError(1, "missing qreg declaration");
    }
    return result;
}

/// Prints the supported subset; parse(to_qasm(...)) reproduces the gates.
inline std::string to_qasm(const std::vector<Gate>& gates, int n_logical) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << n_logical << "];\n";
    for (const auto& g : gates) {
        os << g.label << " q[" << g.qubits[0] << "]";
        if (g.is_two_q()) os << ",q[" << g.qubits[1] << "]";
        os << ";\n";
    }
    return os.str();
}

}  // namespace dsabre
