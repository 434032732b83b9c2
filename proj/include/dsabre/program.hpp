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
 * @file program.hpp
 * @brief The routed instruction stream and its run metrics.
 */

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace dsabre {

enum class OpType { gate1q, gate2q, swap, teleport };

struct RoutedOp {
    OpType type;
    int gate = -1;  ///< source gate id for gate ops
    int a = -1;     ///< slot (gate1q), first slot (gate2q), u (swap), from (tp)
    int b = -1;     ///< second slot (gate2q), v (swap), to (teleport)
    int qubit = -1; ///< moving logical qubit (teleport)
    int link = -1;  ///< consumed link index (teleport)
};

/// Ordered op stream with counters; every teleport consumes one EPR pair.
struct RoutedProgram {
    std::vector<RoutedOp> ops;
    int teleports = 0;
    int swaps = 0;
    int rollbacks = 0;
    int relief_moves = 0;

    /// One op per line: `G1 <label> s<slot>`, `G2 <label> s<a> s<b>`,
    /// `SW s<u> s<v>`, `TP q<logical> s<from>->s<to> link<idx>`.
    [[nodiscard]] std::string dump(const CircuitDag& dag) const {
        std::ostringstream os;
        for (const auto& op : ops) {
            switch (op.type) {
                case OpType::gate1q:
                    os << "G1 " << dag.gate(op.gate).label << " s" << op.a;
                    break;
                case OpType::gate2q:
                    os << "G2 " << dag.gate(op.gate).label << " s" << op.a
                       << " s" << op.b;
                    break;
                case OpType::swap:
                    os << "SW s" << op.a << " s" << op.b;
                    break;
                case OpType::teleport:
                    os << "TP q" << op.qubit << " s" << op.a << "->s" << op.b
                       << " link" << op.link;
                    break;
            }
            os << "\n";
        }
        return os.str();
    }
};

enum class RouteStatus { complete, aborted };

struct Metrics {
    int epr = 0;
    int swaps = 0;
    long long cost = 0;
    int rollbacks = 0;
    int relief_moves = 0;
    double runtime_ms = 0.0;
    // Diagnostics used by the complexity guardrails.
    long long iterations = 0;
    long long flagged_iterations = 0;
    int max_scored_candidates = 0;
};

}  // namespace dsabre
