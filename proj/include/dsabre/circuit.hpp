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
 * @file circuit.hpp
 * @brief Gate dependency DAG and benchmark circuit generators.
 *
 * The DAG links each gate to the next gate acting on the same qubit, one
 * edge per shared wire. The front layer is the set of gates with no
 * unexecuted predecessors. Construction is pure; the per-run execution
 * state (remaining in-degrees, executed flags) is owned by whoever copies
 * the DAG into a routing run.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace dsabre {

enum class GateKind { one_q, two_q };

struct Gate {
    int id = -1;
    GateKind kind = GateKind::one_q;
    std::array<int, 2> qubits{-1, -1};
    std::string label;

    [[nodiscard]] bool is_two_q() const noexcept {
        return kind == GateKind::two_q;
    }
    [[nodiscard]] int n_qubits() const noexcept { return is_two_q() ? 2 : 1; }
};

inline Gate gate1q(std::string label, int q) {
    Gate g;
    g.kind = GateKind::one_q;
    g.qubits = {q, -1};
    g.label = std::move(label);
    return g;
}

inline Gate gate2q(std::string label, int a, int b) {
    Gate g;
    g.kind = GateKind::two_q;
    g.qubits = {a, b};
    g.label = std::move(label);
    return g;
}

class CircuitDag {
public:
    CircuitDag() = default;

    [[nodiscard]] int size() const noexcept {
        return static_cast<int>(gates_.size());
    }
    [[nodiscard]] int width() const noexcept { return n_logical_; }
    [[nodiscard]] const Gate& gate(int g) const { return gates_.at(g); }
    [[nodiscard]] const std::vector<Gate>& gates() const noexcept {
        return gates_;
    }
    /// Next gate on each operand wire (-1 when the wire ends), indexed by
    /// operand position.
    [[nodiscard]] const std::array<int, 2>& succ(int g) const {
        return succ_.at(g);
    }
    [[nodiscard]] int first_on_wire(int q) const { return first_on_wire_.at(q); }
    [[nodiscard]] int initial_in_degree(int g) const {
        return initial_in_degree_.at(g);
    }

    // ---- per-run execution state -------------------------------------

    void reset_run_state() {
        remaining_in_degree_ = initial_in_degree_;
        executed_.assign(gates_.size(), 0);
        executed_count_ = 0;
    }

    [[nodiscard]] bool executed(int g) const { return executed_.at(g) != 0; }
    [[nodiscard]] int remaining_in_degree(int g) const {
        return remaining_in_degree_.at(g);
    }
    [[nodiscard]] int executed_count() const noexcept { return executed_count_; }
    [[nodiscard]] int unexecuted_count() const noexcept {
        return size() - executed_count_;
    }

    /// Marks g executed and appends the gates this unblocks to newly_ready.
    void execute(int g, std::vector<int>& newly_ready) {
        if (executed_[g]) throw std::logic_error("gate executed twice");
        executed_[g] = 1;
        ++executed_count_;
        for (int w = 0; w < gates_[g].n_qubits(); ++w) {
            const int s = succ_[g][w];
            if (s >= 0 && --remaining_in_degree_[s] == 0) {
                newly_ready.push_back(s);
            }
        }
    }

    /// Gates ready to execute: no unexecuted predecessors. O(N) scan.
    [[nodiscard]] std::vector<int> front_scan() const {
        std::vector<int> f;
        for (int g = 0; g < size(); ++g) {
            if (!executed_[g] && remaining_in_degree_[g] == 0) f.push_back(g);
        }
        return f;
    }

    /// Longest path through the DAG, in gates. Empty circuit has depth 0.
    [[nodiscard]] int depth() const {
        std::vector<int> dp(gates_.size(), 1);
        int best = gates_.empty() ? 0 : 1;
        for (int g = 0; g < size(); ++g) {
            for (int w = 0; w < gates_[g].n_qubits(); ++w) {
                const int s = succ_[g][w];
                if (s >= 0) dp[s] = std::max(dp[s], dp[g] + 1);
            }
            best = std::max(best, dp[g]);
        }
        return gates_.empty() ? 0 : best;
    }

    // Snapshot/restore of the run state, for checkpointing.
    struct RunState {
        std::vector<int> remaining_in_degree;
        std::vector<char> executed;
        int executed_count = 0;
    };
    [[nodiscard]] RunState save_run_state() const {
        return {remaining_in_degree_, executed_, executed_count_};
    }
    void restore_run_state(const RunState& s) {
        remaining_in_degree_ = s.remaining_in_degree;
        executed_ = s.executed;
        executed_count_ = s.executed_count;
    }

    friend CircuitDag build_dag(std::vector<Gate> gates, int n_logical);

private:
    std::vector<Gate> gates_;
    int n_logical_ = 0;
    std::vector<std::array<int, 2>> succ_;
    std::vector<int> first_on_wire_;
    std::vector<int> initial_in_degree_;
    std::vector<int> remaining_in_degree_;
    std::vector<char> executed_;
    int executed_count_ = 0;
};

/// Builds the dependency DAG; gate ids are reassigned to program order.
inline CircuitDag build_dag(std::vector<Gate> gates, int n_logical) {
    CircuitDag dag;
    dag.n_logical_ = n_logical;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        Gate& g = gates[i];
        g.id = static_cast<int>(i);
        for (int w = 0; w < g.n_qubits(); ++w) {
            if (g.qubits[w] < 0 || g.qubits[w] >= n_logical) {
                throw std::out_of_range("gate " + std::to_string(i) +
                                        " references qubit " +
                                        std::to_string(g.qubits[w]) +
                                        " outside width " +
                                        std::to_string(n_logical));
            }
        }
        if (g.is_two_q() && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("two-qubit gate on identical operands");
        }
    }
    dag.gates_ = std::move(gates);
    const int n = dag.size();
    dag.succ_.assign(n, {-1, -1});
    dag.first_on_wire_.assign(n_logical, -1);
    dag.initial_in_degree_.assign(n, 0);
    std::vector<std::pair<int, int>> last(n_logical, {-1, -1});  // gate, wire
    for (int g = 0; g < n; ++g) {
        for (int w = 0; w < dag.gates_[g].n_qubits(); ++w) {
            const int q = dag.gates_[g].qubits[w];
            if (last[q].first >= 0) {
                dag.succ_[last[q].first][last[q].second] = g;
                ++dag.initial_in_degree_[g];
            } else {
                dag.first_on_wire_[q] = g;
            }
            last[q] = {g, w};
        }
    }
    dag.reset_run_state();
    return dag;
}

/// DAG of the reverse circuit: same gates in reverse program order.
inline CircuitDag reverse_dag(const CircuitDag& dag) {
    std::vector<Gate> rev(dag.gates().rbegin(), dag.gates().rend());
    return build_dag(std::move(rev), dag.width());
}

// ---- benchmark generators --------------------------------------------

/// One Hadamard followed by a CX chain: depth n, n-1 CX gates.
inline std::vector<Gate> gen_ghz(int n) {
    if (n < 2) throw std::invalid_argument("ghz needs n >= 2");
    std::vector<Gate> gates;
    gates.push_back(gate1q("h", 0));
    for (int i = 0; i + 1 < n; ++i) {
        gates.push_back(gate2q("cx", i, i + 1));
    }
    return gates;
}

namespace detail {
inline std::string angle_label(const char* name, double theta) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s(%.9g)", name, theta);
    return buf;
}
}  // namespace detail

/**
 * Textbook QFT with every controlled-phase lowered to 2 CX plus 1Q
 * rotations; n(n-1) CX in total. The trailing qubit-reversal swap layer is
 * omitted.
 */
inline std::vector<Gate> gen_qft(int n) {
    if (n < 2) throw std::invalid_argument("qft needs n >= 2");
    std::vector<Gate> gates;
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        gates.push_back(gate1q("h", i));
        for (int j = i + 1; j < n; ++j) {
            const double lam = pi / std::pow(2.0, j - i);
            // cp(lam) on control j, target i
            gates.push_back(gate1q(detail::angle_label("rz", lam / 2), j));
            gates.push_back(gate2q("cx", j, i));
            gates.push_back(gate1q(detail::angle_label("rz", -lam / 2), i));
            gates.push_back(gate2q("cx", j, i));
            gates.push_back(gate1q(detail::angle_label("rz", lam / 2), i));
        }
    }
    return gates;
}

/// Ring graph state: H on every qubit, one CZ per ring edge.
inline std::vector<Gate> gen_graphstate(int n) {
    if (n < 2) throw std::invalid_argument("graphstate needs n >= 2");
    std::vector<Gate> gates;
    for (int i = 0; i < n; ++i) gates.push_back(gate1q("h", i));
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        edges.insert({std::min(i, j), std::max(i, j)});
    }
    for (auto [a, b] : edges) gates.push_back(gate2q("cz", a, b));
    return gates;
}

/// Uniform random CX pairs interleaved with random 1Q gates.
inline std::vector<Gate> gen_random(int n, int two_q_count,
                                    std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random circuit needs n >= 2");
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(two_q_count) * 2);
    static const char* kOneQ[] = {"h", "x", "t", "s"};
    for (int i = 0; i < two_q_count; ++i) {
        switch (rng_below(rng, 5)) {
            case 4:
                gates.push_back(gate1q(
                    detail::angle_label("rz", rng_below(rng, 1000) / 1000.0),
                    rng_below(rng, n)));
                break;
            default:
                gates.push_back(
                    gate1q(kOneQ[rng_below(rng, 4)], rng_below(rng, n)));
        }
        const int a = rng_below(rng, n);
        int b = rng_below(rng, n - 1);
        if (b >= a) ++b;
        gates.push_back(gate2q("cx", a, b));
    }
    return gates;
}

/// Plain-text dump, one line per gate: `GATE <label> q<i> [q<j>]`.
inline std::string dump_circuit(const std::vector<Gate>& gates) {
    std::ostringstream os;
    for (const auto& g : gates) {
        os << "GATE " << g.label << " q" << g.qubits[0];
        if (g.is_two_q()) os << " q" << g.qubits[1];
        os << "\n";
    }
    return os.str();
}

inline int count_two_q(const std::vector<Gate>& gates) {
    int n = 0;
    for (const auto& g : gates) n += g.is_two_q();
    return n;
}

}  // namespace dsabre
