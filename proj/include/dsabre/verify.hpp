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
 * @file verify.hpp
 * @brief Independent replay validator for routed programs.
 *
 * Replays the op stream on a shadow layout and checks gate legality
 * (intra-core adjacency), SWAP legality, teleport legality (declared link,
 * empty destination, clear source port, correct staging slot), per-wire
 * gate order against the source circuit, gate multiset preservation and
 * the reported final layout. Wire order is re-derived from the source gate
 * list, not from the router's DAG structures.
 */

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arch.hpp"
#include "circuit.hpp"
#include "layout.hpp"
#include "params.hpp"
#include "program.hpp"

namespace dsabre {

struct Violation {
    std::size_t op_index;
    std::string kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& v : violations) {
            j.push_back({{"op_index", v.op_index},
                         {"kind", v.kind},
                         {"detail", v.detail}});
        }
        return j;
    }
};

inline ValidationReport validate(const RoutedProgram& program,
                                 const Architecture& arch,
                                 const CircuitDag& source,
                                 const Layout& initial_layout,
                                 const Layout* expected_final = nullptr) {
    ValidationReport report;
    auto flag = [&](std::size_t idx, std::string kind, std::string detail) {
        report.ok = false;
        report.violations.push_back({idx, std::move(kind), std::move(detail)});
    };

    Layout shadow = initial_layout;
    std::vector<char> seen(source.size(), 0);

    // Expected per-wire gate order, re-derived from the gate list.
    std::vector<std::vector<int>> expected_wire(source.width());
    for (int g = 0; g < source.size(); ++g) {
        for (int w = 0; w < source.gate(g).n_qubits(); ++w) {
            expected_wire[source.gate(g).qubits[w]].push_back(g);
        }
    }
    std::vector<std::size_t> wire_pos(source.width(), 0);

    auto check_gate_order = [&](std::size_t idx, int g) {
        for (int w = 0; w < source.gate(g).n_qubits(); ++w) {
            const int q = source.gate(g).qubits[w];
            if (wire_pos[q] >= expected_wire[q].size() ||
                expected_wire[q][wire_pos[q]] != g) {
                flag(idx, "wire-order",
                     "gate " + std::to_string(g) + " out of order on qubit " +
                         std::to_string(q));
            } else {
                ++wire_pos[q];
            }
        }
    };

    for (std::size_t i = 0; i < program.ops.size(); ++i) {
        const RoutedOp& op = program.ops[i];
        switch (op.type) {
            case OpType::gate1q: {
                if (op.gate < 0 || op.gate >= source.size()) {
                    flag(i, "gate-unknown", "bad gate id");
                    break;
                }
                const Gate& g = source.gate(op.gate);
                if (seen[op.gate]) {
                    flag(i, "gate-duplicate",
                         "gate " + std::to_string(op.gate) + " appears twice");
                }
                seen[op.gate] = 1;
                if (g.is_two_q()) {
                    flag(i, "gate-kind", "2Q gate emitted as G1");
                    break;
                }
                if (shadow.occupant(op.a) != g.qubits[0]) {
                    flag(i, "gate-operand",
                         "slot " + std::to_string(op.a) +
                             " does not hold qubit " +
                             std::to_string(g.qubits[0]));
                }
                check_gate_order(i, op.gate);
                break;
            }
            case OpType::gate2q: {
                if (op.gate < 0 || op.gate >= source.size()) {
                    flag(i, "gate-unknown", "bad gate id");
                    break;
                }
                const Gate& g = source.gate(op.gate);
                if (seen[op.gate]) {
                    flag(i, "gate-duplicate",
                         "gate " + std::to_string(op.gate) + " appears twice");
                }
                seen[op.gate] = 1;
                if (!g.is_two_q()) {
                    flag(i, "gate-kind", "1Q gate emitted as G2");
                    break;
                }
                if (arch.core_of(op.a) != arch.core_of(op.b) ||
                    !arch.intra_adjacent(op.a, op.b)) {
                    flag(i, "gate-adjacency",
                         "slots " + std::to_string(op.a) + "," +
                             std::to_string(op.b) +
                             " are not intra-core adjacent");
                }
                if (shadow.occupant(op.a) != g.qubits[0] ||
                    shadow.occupant(op.b) != g.qubits[1]) {
                    flag(i, "gate-operand", "slots do not hold the operands");
                }
                check_gate_order(i, op.gate);
                break;
            }
            case OpType::swap: {
                if (arch.core_of(op.a) != arch.core_of(op.b) ||
                    !arch.intra_adjacent(op.a, op.b)) {
                    flag(i, "swap-edge",
                         "swap " + std::to_string(op.a) + "," +
                             std::to_string(op.b) + " not on an intra edge");
                    break;
                }
                shadow.apply_swap(op.a, op.b);
                break;
            }
            case OpType::teleport: {
                if (op.link < 0 ||
                    op.link >= static_cast<int>(arch.links().size())) {
                    flag(i, "teleport-link", "undeclared link");
                    break;
                }
                const InterLink& l = arch.links()[op.link];
                SlotId port_src = -1;
                if (op.b == l.port_b) {
                    port_src = l.port_a;
                } else if (op.b == l.port_a) {
                    port_src = l.port_b;
                } else {
                    flag(i, "teleport-link",
                         "destination is not a port of link " +
                             std::to_string(op.link));
                    break;
                }
                if (shadow.occupant(op.a) != op.qubit) {
                    flag(i, "teleport-wrong-slot",
                         "qubit " + std::to_string(op.qubit) +
                             " is not at slot " + std::to_string(op.a));
                    break;
                }
                if (shadow.occupant(op.b) != -1) {
                    flag(i, "teleport-destination-occupied",
                         "slot " + std::to_string(op.b) + " is occupied");
                    break;
                }
                if (!arch.intra_adjacent(op.a, port_src)) {
                    flag(i, "teleport-staging",
                         "source slot is not adjacent to the source port");
                }
                if (shadow.occupant(port_src) != -1) {
                    flag(i, "teleport-source-port-occupied",
                         "port " + std::to_string(port_src) + " is occupied");
                }
                shadow.apply_teleport(op.qubit, op.b);
                break;
            }
        }
    }

    for (int g = 0; g < source.size(); ++g) {
        if (!seen[g]) {
            flag(program.ops.size(), "gate-missing",
                 "gate " + std::to_string(g) + " never executed");
        }
    }
    if (expected_final != nullptr && !(shadow == *expected_final)) {
        flag(program.ops.size(), "final-layout-mismatch",
             "replayed layout differs from the reported final layout");
    }
    return report;
}

/// Counts and cost; cost = c_swap * swaps + c_tele * teleports.
inline Metrics compute_metrics(const RoutedProgram& program,
                               const RouterParams& params) {
    Metrics m;
    for (const auto& op : program.ops) {
        m.epr += op.type == OpType::teleport;
        m.swaps += op.type == OpType::swap;
    }
    m.cost = static_cast<long long>(params.c_swap) * m.swaps +
             static_cast<long long>(params.c_tele) * m.epr;
    m.rollbacks = program.rollbacks;
    m.relief_moves = program.relief_moves;
    return m;
}

}  // namespace dsabre
