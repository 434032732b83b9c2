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
 * @file router.hpp
 * @brief The routing loop for multi-core devices.
 *
 * Each iteration drains the front layer (1Q gates and already-adjacent
 * intra-core 2Q gates), partitions the remaining front into intra-core and
 * inter-core gates, then applies exactly one move: the best intra-core SWAP
 * when an intra-core gate is pending, otherwise the cheapest teleport
 * candidate (gate-driven and congestion-relief candidates compete in one
 * pool). Progress is checkpointed; after a configurable number of stalled
 * iterations the router rolls back and forces shortest-path progress on the
 * most-stuck gate, aborting once the rollback budget is spent.
 *
 * Scoring conventions: the intra-core SWAP score is a gain and is
 * maximised; the teleport score is a cost and is minimised. Distance deltas
 * are old-minus-new throughout.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "arch.hpp"
#include "circuit.hpp"
#include "distance.hpp"
#include "layout.hpp"
#include "params.hpp"
#include "program.hpp"

namespace dsabre {

struct ExtendedSetEntry {
    int gate;
    int dep;        ///< BFS layer (inter set) / longest wire-path (intra set)
    double weight;  ///< gamma^dep
};

struct TeleportCandidate {
    enum class Kind { gate_driven, relief };

    int moving_qubit = -1;
    int gate = -1;  ///< driving front gate; -1 for relief moves
    CoreId src_core = -1;
    CoreId next_core = -1;
    int link = -1;
    SlotId port_src = -1;
    SlotId port_dst = -1;
    SlotId staging_slot = -1;
    int d_prep = 0;
    int c_cap = 0;
    double g_hop = 0.0;
    double delta_f = 0.0;
    double delta_e_weighted = 0.0;
    double relief_bonus = 0.0;
    double score = std::numeric_limits<double>::infinity();
    bool feasible = false;
    Kind kind = Kind::gate_driven;
};

struct RouteResult {
    RoutedProgram program;
    Layout final_layout;
    Metrics metrics;
    RouteStatus status = RouteStatus::complete;
};

class Router {
public:
    enum class Progress { advanced, stalled, rolled_back, aborted };

    Router(const CircuitDag& dag, Layout layout, const Architecture& arch,
           const DistanceTables& tables, RouterParams params)
        : arch_(arch), tables_(tables), params_(params), dag_(dag),
          layout_(std::move(layout)) {
        params_.validate();
        if (params_.w_link != arch_.w_link()) {
            throw std::invalid_argument(
                "params.w_link disagrees with the architecture");
        }
        if (layout_.n_logical() < dag_.width()) {
            throw std::invalid_argument(
                "layout does not cover every logical qubit");
        }
        if (layout_.n_slots() != arch_.n_slots()) {
            throw std::invalid_argument("layout built for another device");
        }
        dag_.reset_run_state();
        front_since_.assign(dag_.size(), -1);
        for (int g : dag_.front_scan()) {
            front_.push_back(g);
            front_since_[g] = 0;
        }
        next_on_wire_.assign(layout_.n_logical(), -1);
        for (int q = 0; q < dag_.width(); ++q) {
            next_on_wire_[q] = dag_.first_on_wire(q);
        }
        save_checkpoint();
    }

    // ---- main loop ----------------------------------------------------

    RouteResult run() {
        while (!step()) {
        }
        return make_result();
    }

    /// Runs one iteration (P1-P4); true once routing is done or aborted.
    bool step() {
        if (finished() || aborted_) return true;
        ++iterations_;
        scored_this_iter_ = 0;
        drain_front();                                          // P1
        if (finished()) return true;
        auto [f_intra, f_inter] = partition_front();            // P2
        if (!f_intra.empty()) {
            apply_best_intra_swap(f_intra);                     // P3a
        } else if (!f_inter.empty()) {
            apply_best_teleport(f_inter);                       // P3b
        }
        max_scored_ = std::max(max_scored_, scored_this_iter_);
        checkpoint_cycle();                                     // P4
        return finished() || aborted_;
    }

    [[nodiscard]] bool finished() const {
        return dag_.unexecuted_count() == 0;
    }

    // ---- phase operations (public for white-box tests) ----------------

    /// P1: executes 1Q gates and adjacent same-core 2Q gates until no front
    /// gate qualifies. Returns the executed gate ids in emission order.
    std::vector<int> drain_front() {
        std::vector<int> done;
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < front_.size();) {
                const int g = front_[i];
                const Gate& gate = dag_.gate(g);
                bool fire = false;
                if (!gate.is_two_q()) {
                    fire = true;
                } else {
                    const SlotId a = layout_.slot_of(gate.qubits[0]);
                    const SlotId b = layout_.slot_of(gate.qubits[1]);
                    fire = layout_.core_of(a) == layout_.core_of(b) &&
                           arch_.intra_adjacent(a, b);
                }
                if (fire) {
                    execute_gate(g);
                    done.push_back(g);
                    progress = true;
                    // front_ mutated; restart the scan at this index
                } else {
                    ++i;
                }
            }
        }
        return done;
    }

    /// P2: splits the (drained) front into same-core and cross-core gates.
    [[nodiscard]] std::pair<std::vector<int>, std::vector<int>>
    partition_front() const {
        std::vector<int> intra;
        std::vector<int> inter;
        for (int g : front_) {
            const Gate& gate = dag_.gate(g);
            if (!gate.is_two_q()) continue;
            if (layout_.core_of_qubit(gate.qubits[0]) ==
                layout_.core_of_qubit(gate.qubits[1])) {
                intra.push_back(g);
            } else {
                inter.push_back(g);
            }
        }
        return {intra, inter};
    }

    /**
     * Per-core lookahead list in topological order, at most L entries.
     * A wire stops contributing at the first gate that leaves the core
     * (taint propagation); dep is the longest wire path from the front,
     * counting every gate on it.
     */
    [[nodiscard]] std::vector<ExtendedSetEntry>
    intra_extended_set(CoreId core) const {
        std::vector<ExtendedSetEntry> out;
        const int cap = params_.ext_cap;
        std::vector<int> seeds;
        for (int g : front_) {
            const Gate& gate = dag_.gate(g);
            if (gate.is_two_q() &&
                layout_.core_of_qubit(gate.qubits[0]) == core &&
                layout_.core_of_qubit(gate.qubits[1]) == core) {
                seeds.push_back(g);
            }
        }
        if (seeds.empty() || cap == 0) return out;

        std::unordered_map<int, int> indeg;
        std::unordered_map<int, int> depth;
        std::set<int> tainted;
        using Item = std::pair<int, int>;  // (dep, gate)
        std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
        auto arrive = [&](int succ, int dep_from) {
            if (succ < 0) return;
            auto [it, unused] =
                indeg.try_emplace(succ, dag_.remaining_in_degree(succ));
            auto& d = depth[succ];
            d = std::max(d, dep_from + 1);
            if (--(it->second) == 0) ready.emplace(d, succ);
        };
        for (int g : seeds) {
            arrive(dag_.succ(g)[0], 0);
            arrive(dag_.succ(g)[1], 0);
        }
        while (!ready.empty() && static_cast<int>(out.size()) < cap) {
            auto [dep, g] = ready.top();
            ready.pop();
            const Gate& gate = dag_.gate(g);
            if (!gate.is_two_q()) {
                arrive(dag_.succ(g)[0], dep);
                continue;
            }
            const int a = gate.qubits[0];
            const int b = gate.qubits[1];
            const bool leaves = layout_.core_of_qubit(a) != core ||
                                layout_.core_of_qubit(b) != core;
            if (leaves || tainted.count(a) || tainted.count(b)) {
                tainted.insert(a);
                tainted.insert(b);
                continue;
            }
            out.push_back({g, dep, std::pow(params_.gamma, dep)});
            arrive(dag_.succ(g)[0], dep);
            arrive(dag_.succ(g)[1], dep);
        }
        return out;
    }

    /// Eq.-style intra score for swapping slots u,v of a core; a gain, to
    /// be maximised. Convenience form recomputing the per-core sets.
    [[nodiscard]] double score_intra_swap(CoreId core, SlotId u,
                                          SlotId v) const {
        auto [f_intra, f_inter] = partition_front();
        std::vector<int> f_c;
        for (int g : f_intra) {
            if (layout_.core_of_qubit(dag_.gate(g).qubits[0]) == core) {
                f_c.push_back(g);
            }
        }
        return score_intra_pair(f_c, intra_extended_set(core), u, v);
    }

    /**
     * Global lookahead window beyond the front, built as a BFS-layer peel
     * of the remaining DAG. Within a layer, gates sharing a qubit with the
     * front come first; dep is the layer index and the L-truncation cuts at
     * a layer boundary (within the first contributing layer when that layer
     * alone exceeds L). The topological ablation variant takes the first L
     * remaining 2Q gates in program order instead.
     */
    const std::vector<ExtendedSetEntry>& build_inter_extended_set() {
        if (extset_version_ == version_) return inter_extset_;
        extset_version_ = version_;
        inter_extset_.clear();
        layer_depth_.assign(dag_.size(), -1);

        std::set<int> front_qubits;
        for (int g : front_) {
            const Gate& gate = dag_.gate(g);
            for (int w = 0; w < gate.n_qubits(); ++w) {
                front_qubits.insert(gate.qubits[w]);
            }
        }

        std::vector<int> indeg(dag_.size(), 0);
        for (int g = 0; g < dag_.size(); ++g) {
            indeg[g] = dag_.remaining_in_degree(g);
        }
        std::vector<int> current = front_;
        for (int g : current) layer_depth_[g] = 0;
        const int cap = params_.ext_cap;
        const bool collect = !params_.topo_extended_set;
        bool cut = cap == 0;
        int k = 1;
        while (!current.empty()) {
            std::vector<int> next;
            for (int g : current) {
                for (int w = 0; w < dag_.gate(g).n_qubits(); ++w) {
                    const int s = dag_.succ(g)[w];
                    if (s >= 0 && !dag_.executed(s) && --indeg[s] == 0) {
                        next.push_back(s);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            for (int s : next) layer_depth_[s] = k;
            if (collect && !cut) {
                std::vector<int> members;
                for (int pass = 0; pass < 2; ++pass) {
                    for (int s : next) {
                        if (!dag_.gate(s).is_two_q()) continue;
                        const bool shares =
                            front_qubits.count(dag_.gate(s).qubits[0]) ||
                            front_qubits.count(dag_.gate(s).qubits[1]);
                        if (shares == (pass == 0)) members.push_back(s);
                    }
                }
                const int room = cap - static_cast<int>(inter_extset_.size());
                if (static_cast<int>(members.size()) > room) {
                    if (inter_extset_.empty()) {
                        for (int i = 0; i < room; ++i) {
                            inter_extset_.push_back(
                                {members[i], k, std::pow(params_.gamma, k)});
                        }
                    }
                    cut = true;
                } else {
                    for (int s : members) {
                        inter_extset_.push_back(
                            {s, k, std::pow(params_.gamma, k)});
                    }
                }
            }
            current = std::move(next);
            ++k;
        }
        if (params_.topo_extended_set) {
            std::set<int> in_front(front_.begin(), front_.end());
            for (int g = 0;
                 g < dag_.size() &&
                 static_cast<int>(inter_extset_.size()) < cap;
                 ++g) {
                if (dag_.executed(g) || in_front.count(g) ||
                    !dag_.gate(g).is_two_q()) {
                    continue;
                }
                const int dep = static_cast<int>(inter_extset_.size()) + 1;
                inter_extset_.push_back({g, dep, std::pow(params_.gamma, dep)});
            }
        }
        return inter_extset_;
    }

    /// One scored candidate per (front cross-core gate endpoint, neighbour
    /// core of that endpoint's core, link between them).
    std::vector<TeleportCandidate> enumerate_tele_candidates() {
        auto [f_intra, f_inter] = partition_front();
        std::vector<TeleportCandidate> out;
        for (int g : f_inter) {
            const Gate& gate = dag_.gate(g);
            for (int e = 0; e < 2; ++e) {
                const int q = gate.qubits[e];
                const CoreId src = layout_.core_of_qubit(q);
                for (auto [next, link] : arch_.links_of_core(src)) {
                    TeleportCandidate cand;
                    cand.kind = TeleportCandidate::Kind::gate_driven;
                    cand.moving_qubit = q;
                    cand.gate = g;
                    cand.src_core = src;
                    cand.next_core = next;
                    cand.link = link;
                    score_candidate(cand);
                    out.push_back(cand);
                }
            }
        }
        return out;
    }

    /**
     * Fills staging/eviction geometry and the five score terms. Teleport
     * scores are costs; lower wins. Candidates whose required eviction has
     * no destination slot are marked infeasible with an infinite score.
     */
    void score_candidate(TeleportCandidate& cand) {
        ++scored_this_iter_;
        if (!prepare_candidate(cand)) return;

        const int f_dst = layout_.free_in_core(cand.next_core);
        cand.c_cap = params_.effective_c_pen() *
                     std::max(0, params_.tau - f_dst);

        cand.delta_f = 0.0;
        cand.g_hop = 0.0;
        if (cand.kind == TeleportCandidate::Kind::gate_driven) {
            const Gate& gate = dag_.gate(cand.gate);
            const int partner = gate.qubits[0] == cand.moving_qubit
                                    ? gate.qubits[1]
                                    : gate.qubits[0];
            const SlotId ps = layout_.slot_of(cand.moving_qubit);
            const SlotId pt = layout_.slot_of(partner);
            const CoreId tgt = layout_.core_of(pt);
            cand.delta_f = tables_.phys(ps, pt) - tables_.phys(cand.port_dst, pt);
            cand.g_hop = params_.effective_w_h() *
                         (tables_.core_hops(cand.src_core, tgt) -
                          tables_.core_hops(cand.next_core, tgt));
        }

        // Lookahead restricted to gates involving the moving qubit,
        // evaluated on the full weighted graph with the mover at port_dst.
        cand.delta_e_weighted = 0.0;
        const auto& ext = build_inter_extended_set();
        for (const auto& entry : ext) {
            const Gate& eg = dag_.gate(entry.gate);
            int other = -1;
            if (eg.qubits[0] == cand.moving_qubit) {
                other = eg.qubits[1];
            } else if (eg.qubits[1] == cand.moving_qubit) {
                other = eg.qubits[0];
            } else {
                continue;
            }
            const SlotId so = layout_.slot_of(other);
            const SlotId sq = layout_.slot_of(cand.moving_qubit);
            cand.delta_e_weighted +=
                entry.weight *
                (tables_.phys(sq, so) - tables_.phys(cand.port_dst, so));
        }

        cand.score = cand.d_prep + cand.c_cap - cand.g_hop - cand.delta_f -
                     params_.effective_w_e() * cand.delta_e_weighted -
                     cand.relief_bonus;
        cand.feasible = true;
    }

    /// Per-core count of pending cross-core gates (front plus lookahead
    /// window) whose canonical core path traverses the core, endpoints
    /// included.
    std::vector<int> demand_vector() {
        std::vector<int> d(arch_.n_cores(), 0);
        auto add_gate = [&](int g) {
            const Gate& gate = dag_.gate(g);
            const CoreId ca = layout_.core_of_qubit(gate.qubits[0]);
            const CoreId cb = layout_.core_of_qubit(gate.qubits[1]);
            if (ca == cb) return;
            for (CoreId c : tables_.core_path(ca, cb)) ++d[c];
        };
        for (int g : front_) {
            if (dag_.gate(g).is_two_q()) add_gate(g);
        }
        for (const auto& entry : build_inter_extended_set()) {
            add_gate(entry.gate);
        }
        return d;
    }

    /// Relief moves out of flagged cores: up to three most-idle resident
    /// qubits (absent from the front) per flagged core, teleported into any
    /// non-flagged neighbour, scored like teleports with delta_f = g_hop = 0
    /// plus the imbalance bonus.
    std::vector<TeleportCandidate>
    relief_candidates(const std::vector<int>& demand) {
        std::vector<TeleportCandidate> out;
        std::vector<char> flagged(arch_.n_cores(), 0);
        for (CoreId c = 0; c < arch_.n_cores(); ++c) {
            flagged[c] = demand[c] >= params_.theta_d &&
                         layout_.free_in_core(c) <= params_.theta_f;
        }
        std::set<int> front_qubits;
        for (int g : front_) {
            const Gate& gate = dag_.gate(g);
            for (int w = 0; w < gate.n_qubits(); ++w) {
                front_qubits.insert(gate.qubits[w]);
            }
        }
        build_inter_extended_set();  // ensures layer_depth_ is current
        for (CoreId c = 0; c < arch_.n_cores(); ++c) {
            if (!flagged[c]) continue;
            std::vector<std::pair<long long, int>> idle;  // (-depth, qubit)
            for (SlotId s : arch_.core(c).slots) {
                const int q = layout_.occupant(s);
                if (q < 0 || front_qubits.count(q)) continue;
                long long depth = std::numeric_limits<long long>::max();
                if (q < dag_.width() && next_on_wire_[q] >= 0) {
                    depth = layer_depth_[next_on_wire_[q]];
                }
                idle.emplace_back(-depth, q);
            }
            std::sort(idle.begin(), idle.end());
            const int victims =
                std::min<int>(3, static_cast<int>(idle.size()));
            for (int v = 0; v < victims; ++v) {
                const int q = idle[v].second;
                for (auto [next, link] : arch_.links_of_core(c)) {
                    // Only genuinely less-loaded neighbours: the landing
                    // core must stay above the free-slot threshold after
                    // the move, or the relieved qubit just bounces back.
                    if (flagged[next] ||
                        layout_.free_in_core(next) < params_.theta_f + 2) {
                        continue;
                    }
                    TeleportCandidate cand;
                    cand.kind = TeleportCandidate::Kind::relief;
                    cand.moving_qubit = q;
                    cand.src_core = c;
                    cand.next_core = next;
                    cand.link = link;
                    cand.relief_bonus =
                        params_.b_r * (demand[c] - layout_.free_in_core(c));
                    score_candidate(cand);
                    out.push_back(cand);
                }
            }
        }
        return out;
    }

    /**
     * Emits the move: landing-port eviction, source-port eviction, staging
     * SWAPs to the staging slot, then one TELEPORT over the link. Ports are
     * freed by pulling the hole from the nearest free slot, so the SWAP
     * count equals d_prep unless the paths interfere.
     */
    void apply_teleport_move(const TeleportCandidate& cand) {
        if (!cand.feasible) {
            throw std::logic_error("applying an infeasible teleport candidate");
        }
        const int q = cand.moving_qubit;
        if (layout_.occupant(cand.port_dst) >= 0) {
            const SlotId f =
                nearest_free_slot(cand.next_core, cand.port_dst, -1);
            pull_hole(cand.port_dst, f, -1);
        }
        // Bring q to the staging slot and clear the source port. Staging
        // walks around the port and eviction holes route around the staging
        // slot, so this settles immediately except when a detour does not
        // exist and the fallback path disturbs the other constraint.
        for (int round = 0;; ++round) {
            if (round > 4) {
                throw std::logic_error("staging failed to settle");
            }
            if (layout_.slot_of(q) != cand.staging_slot) {
                walk_qubit(q, cand.staging_slot, cand.port_src);
                continue;
            }
            const int occ = layout_.occupant(cand.port_src);
            if (occ >= 0 && occ != q) {
                const SlotId f = nearest_free_slot(
                    cand.src_core, cand.port_src, cand.staging_slot);
                if (f < 0) {
                    throw std::logic_error(
                        "source port eviction lost its slot (port " +
                        std::to_string(cand.port_src) + ", staging " +
                        std::to_string(cand.staging_slot) + ", mover at " +
                        std::to_string(layout_.slot_of(q)) + ", free " +
                        std::to_string(layout_.free_in_core(cand.src_core)) +
                        ", round " + std::to_string(round) + ")");
                }
                pull_hole(cand.port_src, f, cand.staging_slot);
                continue;
            }
            break;
        }
        RoutedOp op;
        op.type = OpType::teleport;
        op.qubit = q;
        op.a = cand.staging_slot;
        op.b = cand.port_dst;
        op.link = cand.link;
        out_.ops.push_back(op);
        ++out_.teleports;
        if (cand.kind == TeleportCandidate::Kind::relief) {
            ++out_.relief_moves;
        }
        layout_.apply_teleport(q, cand.port_dst);
    }

    /// P4: checkpoint on progress; after deadlock_limit stalled iterations
    /// restore the checkpoint and force progress on the most-stuck gate;
    /// abort when the rollback budget is exhausted.
    Progress checkpoint_cycle() {
        if (dag_.executed_count() > last_progress_count_) {
            save_checkpoint();
            stall_ = 0;
            return Progress::advanced;
        }
        ++stall_;
        if (stall_ < params_.deadlock_limit) return Progress::stalled;
        restore_checkpoint();
        stall_ = 0;
        ++out_.rollbacks;
        if (out_.rollbacks >= params_.max_rollbacks) {
            aborted_ = true;
            return Progress::aborted;
        }
        drain_front();
        if (!finished()) forced_progress();
        return Progress::rolled_back;
    }

    // ---- accessors -----------------------------------------------------

    [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
    [[nodiscard]] const RoutedProgram& program() const noexcept { return out_; }
    [[nodiscard]] const CircuitDag& working_dag() const noexcept { return dag_; }
    [[nodiscard]] const std::vector<int>& front() const noexcept {
        return front_;
    }
    [[nodiscard]] long long flagged_iterations() const noexcept {
        return flagged_iterations_;
    }

private:
    // ---- move selection -------------------------------------------------

    void apply_best_intra_swap(const std::vector<int>& f_intra) {
        double best = -std::numeric_limits<double>::infinity();
        SlotId best_u = -1;
        SlotId best_v = -1;
        CoreId core = -1;
        std::vector<int> cores;
        for (int g : f_intra) {
            cores.push_back(layout_.core_of_qubit(dag_.gate(g).qubits[0]));
        }
        std::sort(cores.begin(), cores.end());
        cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
        for (CoreId c : cores) {
            std::vector<int> f_c;
            for (int g : f_intra) {
                if (layout_.core_of_qubit(dag_.gate(g).qubits[0]) == c) {
                    f_c.push_back(g);
                }
            }
            const auto ext = intra_extended_set(c);
            std::set<int> relevant;
            for (int g : f_c) {
                relevant.insert(dag_.gate(g).qubits[0]);
                relevant.insert(dag_.gate(g).qubits[1]);
            }
            for (const auto& entry : ext) {
                relevant.insert(dag_.gate(entry.gate).qubits[0]);
                relevant.insert(dag_.gate(entry.gate).qubits[1]);
            }
            for (auto [u, v] : arch_.core(c).intra_edges) {
                const int qu = layout_.occupant(u);
                const int qv = layout_.occupant(v);
                if ((qu < 0 || !relevant.count(qu)) &&
                    (qv < 0 || !relevant.count(qv))) {
                    continue;
                }
                ++scored_this_iter_;
                const double s = score_intra_pair(f_c, ext, u, v);
                if (s > best) {
                    best = s;
                    best_u = u;
                    best_v = v;
                    core = c;
                }
            }
        }
        if (best_u >= 0) {
            (void)core;
            emit_swap(best_u, best_v);
        }
    }

    void apply_best_teleport(const std::vector<int>& f_inter) {
        (void)f_inter;
        auto cands = enumerate_tele_candidates();
        auto demand = demand_vector();
        bool any_flagged = false;
        for (CoreId c = 0; c < arch_.n_cores(); ++c) {
            any_flagged |= demand[c] >= params_.theta_d &&
                           layout_.free_in_core(c) <= params_.theta_f;
        }
        if (any_flagged) ++flagged_iterations_;
        if (any_flagged && !params_.disable_relief) {
            auto relief = relief_candidates(demand);
            cands.insert(cands.end(), relief.begin(), relief.end());
        }
        const TeleportCandidate* best = nullptr;
        for (const auto& c : cands) {
            if (!c.feasible) continue;
            if (best == nullptr || c.score < best->score) best = &c;
        }
        if (best != nullptr) apply_teleport_move(*best);
    }

    [[nodiscard]] double score_intra_pair(
        const std::vector<int>& f_c, const std::vector<ExtendedSetEntry>& ext,
        SlotId u, SlotId v) const {
        auto moved = [&](SlotId s) { return s == u ? v : s == v ? u : s; };
        auto delta = [&](int g) {
            const Gate& gate = dag_.gate(g);
            const SlotId a = layout_.slot_of(gate.qubits[0]);
            const SlotId b = layout_.slot_of(gate.qubits[1]);
            return tables_.intra(a, b) - tables_.intra(moved(a), moved(b));
        };
        double score = 0.0;
        if (!f_c.empty()) {
            double df = 0.0;
            for (int g : f_c) df += delta(g);
            score += df / static_cast<double>(f_c.size());
        }
        if (!ext.empty()) {
            double de = 0.0;
            for (const auto& entry : ext) de += entry.weight * delta(entry.gate);
            score += params_.effective_w_e() * de /
                     static_cast<double>(ext.size());
        }
        return score;
    }

    /// Staging geometry + eviction distances; false when infeasible.
    bool prepare_candidate(TeleportCandidate& cand) {
        const auto& link = arch_.links()[cand.link];
        if (link.core_a == cand.src_core) {
            cand.port_src = link.port_a;
            cand.port_dst = link.port_b;
        } else {
            cand.port_src = link.port_b;
            cand.port_dst = link.port_a;
        }
        // Landing consumes one net slot. A core driven to zero free slots
        // can never stage or evict another teleport in either direction, so
        // the last slot is never consumed.
        if (layout_.free_in_core(cand.next_core) < 2) return false;
        const SlotId p = layout_.slot_of(cand.moving_qubit);
        // Staging slot: the neighbour of the source port closest to the
        // mover, ties to the lowest slot id.
        SlotId ns = -1;
        int ns_d = std::numeric_limits<int>::max();
        for (SlotId nb : arch_.neighbours(cand.port_src)) {
            if (layout_.core_of(nb) != cand.src_core) continue;
            const int d = tables_.intra(p, nb);
            if (d < ns_d) {
                ns_d = d;
                ns = nb;
            }
        }
        if (ns < 0) return false;  // port without staging neighbour
        cand.staging_slot = ns;

        int evict_src = 0;
        const int occ_src = layout_.occupant(cand.port_src);
        if (occ_src >= 0 && occ_src != cand.moving_qubit) {
            const SlotId f = nearest_free_slot(cand.src_core, cand.port_src, ns);
            if (f < 0) return false;
            evict_src = tables_.intra(cand.port_src, f);
        } else if (occ_src == cand.moving_qubit &&
                   layout_.occupant(ns) >= 0) {
            // Staging the mover off the port parks the staging slot's
            // occupant on it; that qubit must have somewhere to go.
            if (nearest_free_slot(cand.src_core, cand.port_src, ns) < 0) {
                return false;
            }
        }
        int evict_dst = 0;
        if (layout_.occupant(cand.port_dst) >= 0) {
            const SlotId f = nearest_free_slot(cand.next_core, cand.port_dst, -1);
            if (f < 0) return false;
            evict_dst = tables_.intra(cand.port_dst, f);
        } else if (layout_.free_in_core(cand.next_core) == 0) {
            return false;  // cannot happen with an empty port, kept for safety
        }
        cand.d_prep = ns_d + evict_src + evict_dst;
        return true;
    }

    // ---- forced progress (deadlock escape) ------------------------------

    void forced_progress() {
        // Most-stuck front gate: oldest entry, ties to the lowest id.
        int g = -1;
        long long oldest = std::numeric_limits<long long>::max();
        for (int f : front_) {
            if (!dag_.gate(f).is_two_q()) continue;
            if (front_since_[f] < oldest) {
                oldest = front_since_[f];
                g = f;
            }
        }
        if (g < 0) return;
        const Gate& gate = dag_.gate(g);
        while (!dag_.executed(g)) {
            const int qa = gate.qubits[0];
            const int qb = gate.qubits[1];
            const CoreId ca = layout_.core_of_qubit(qa);
            const CoreId cb = layout_.core_of_qubit(qb);
            if (ca == cb) {
                while (tables_.intra(layout_.slot_of(qa),
                                     layout_.slot_of(qb)) > 1) {
                    auto path = shortest_intra_path(layout_.slot_of(qa),
                                                    layout_.slot_of(qb), -1);
                    emit_swap(path[0], path[1]);
                }
                execute_gate(g);
                return;
            }
            TeleportCandidate pick;
            bool have = false;
            for (int e = 0; e < 2; ++e) {
                const int q = e == 0 ? qa : qb;
                const CoreId src = e == 0 ? ca : cb;
                const CoreId other = e == 0 ? cb : ca;
                const CoreId next = tables_.core_path(src, other)[1];
                for (auto [nc, link] : arch_.links_of_core(src)) {
                    if (nc != next) continue;
                    TeleportCandidate cand;
                    cand.kind = TeleportCandidate::Kind::gate_driven;
                    cand.moving_qubit = q;
                    cand.gate = g;
                    cand.src_core = src;
                    cand.next_core = next;
                    cand.link = link;
                    if (!prepare_candidate(cand)) continue;
                    cand.feasible = true;
                    if (!have || cand.d_prep < pick.d_prep) {
                        pick = cand;
                        have = true;
                    }
                }
            }
            if (!have) return;  // hard-blocked; the rollback budget decides
            apply_teleport_move(pick);
        }
    }

    // ---- primitive moves -------------------------------------------------

    void execute_gate(int g) {
        const Gate& gate = dag_.gate(g);
        RoutedOp op;
        if (gate.is_two_q()) {
            op.type = OpType::gate2q;
            op.a = layout_.slot_of(gate.qubits[0]);
            op.b = layout_.slot_of(gate.qubits[1]);
        } else {
            op.type = OpType::gate1q;
            op.a = layout_.slot_of(gate.qubits[0]);
        }
        op.gate = g;
        out_.ops.push_back(op);
        std::vector<int> newly;
        dag_.execute(g, newly);
        auto it = std::lower_bound(front_.begin(), front_.end(), g);
        front_.erase(it);
        front_since_[g] = -1;
        std::sort(newly.begin(), newly.end());
        for (int s : newly) {
            front_.insert(std::lower_bound(front_.begin(), front_.end(), s), s);
            front_since_[s] = iterations_;
        }
        for (int w = 0; w < gate.n_qubits(); ++w) {
            next_on_wire_[gate.qubits[w]] = dag_.succ(g)[w];
        }
        ++version_;
    }

    void emit_swap(SlotId u, SlotId v) {
        RoutedOp op;
        op.type = OpType::swap;
        op.a = u;
        op.b = v;
        out_.ops.push_back(op);
        ++out_.swaps;
        layout_.apply_swap(u, v);
    }

    /// Deterministic BFS path within a core; `avoid` is skipped as an
    /// interior node when a detour exists.
    [[nodiscard]] std::vector<SlotId> shortest_intra_path(SlotId from,
                                                          SlotId to,
                                                          SlotId avoid) const {
        const CoreId core = layout_.core_of(from);
        auto bfs = [&](bool use_avoid) -> std::vector<SlotId> {
            std::unordered_map<SlotId, SlotId> parent;
            parent[from] = from;
            std::queue<SlotId> q;
            q.push(from);
            while (!q.empty()) {
                const SlotId s = q.front();
                q.pop();
                if (s == to) break;
                for (SlotId nb : arch_.neighbours(s)) {
                    if (layout_.core_of(nb) != core) continue;
                    if (use_avoid && nb == avoid && nb != to) continue;
                    if (parent.emplace(nb, s).second) q.push(nb);
                }
            }
            if (!parent.count(to)) return {};
            std::vector<SlotId> path;
            for (SlotId s = to; s != from; s = parent[s]) path.push_back(s);
            path.push_back(from);
            std::reverse(path.begin(), path.end());
            return path;
        };
        auto path = avoid >= 0 ? bfs(true) : bfs(false);
        if (path.empty()) path = bfs(false);
        if (path.empty()) throw std::logic_error("core path lookup failed");
        return path;
    }

    /// Nearest free slot of a core (distance from `from`, ties to the
    /// lowest id), preferring non-port slots; -1 when none exists.
    [[nodiscard]] SlotId nearest_free_slot(CoreId core, SlotId from,
                                           SlotId exclude) const {
        SlotId best = -1;
        int best_d = std::numeric_limits<int>::max();
        for (int pass = 0; pass < 2 && best < 0; ++pass) {
            for (SlotId s : arch_.core(core).slots) {
                if (s == exclude || layout_.occupant(s) >= 0) continue;
                if (pass == 0 && arch_.is_port(s)) continue;
                const int d = tables_.intra(from, s);
                if (d < best_d || (d == best_d && s < best)) {
                    best_d = d;
                    best = s;
                }
            }
        }
        return best;
    }

    /// Frees `port` by walking the hole at `free_slot` onto it, detouring
    /// around `avoid` when a detour exists.
    void pull_hole(SlotId port, SlotId free_slot, SlotId avoid) {
        auto path = shortest_intra_path(port, free_slot, avoid);
        for (std::size_t i = path.size(); i-- > 1;) {
            emit_swap(path[i - 1], path[i]);
        }
    }

    /// Moves q to `to` along a shortest path, avoiding `avoid` if possible.
    void walk_qubit(int q, SlotId to, SlotId avoid) {
        auto path = shortest_intra_path(layout_.slot_of(q), to, avoid);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            emit_swap(path[i], path[i + 1]);
        }
    }

    // ---- checkpointing ---------------------------------------------------

    struct Checkpoint {
        Layout layout;
        CircuitDag::RunState dag_state;
        std::size_t op_count = 0;
        int teleports = 0;
        int swaps = 0;
        int relief_moves = 0;
        std::vector<int> front;
        std::vector<long long> front_since;
        std::vector<int> next_on_wire;
    };

    void save_checkpoint() {
        checkpoint_ = Checkpoint{layout_,       dag_.save_run_state(),
                                 out_.ops.size(), out_.teleports,
                                 out_.swaps,    out_.relief_moves,
                                 front_,        front_since_,
                                 next_on_wire_};
        last_progress_count_ = dag_.executed_count();
    }

    void restore_checkpoint() {
        const Checkpoint& ck = *checkpoint_;
        layout_ = ck.layout;
        dag_.restore_run_state(ck.dag_state);
        out_.ops.resize(ck.op_count);
        out_.teleports = ck.teleports;
        out_.swaps = ck.swaps;
        out_.relief_moves = ck.relief_moves;
        front_ = ck.front;
        front_since_ = ck.front_since;
        next_on_wire_ = ck.next_on_wire;
        last_progress_count_ = dag_.executed_count();
        ++version_;
    }

    RouteResult make_result() {
        Metrics m;
        m.epr = out_.teleports;
        m.swaps = out_.swaps;
        m.cost = static_cast<long long>(params_.c_swap) * m.swaps +
                 static_cast<long long>(params_.c_tele) * m.epr;
        m.rollbacks = out_.rollbacks;
        m.relief_moves = out_.relief_moves;
        m.iterations = iterations_;
        m.flagged_iterations = flagged_iterations_;
        m.max_scored_candidates = max_scored_;
        return RouteResult{out_, layout_, m,
                           aborted_ ? RouteStatus::aborted
                                    : RouteStatus::complete};
    }

    const Architecture& arch_;
    const DistanceTables& tables_;
    RouterParams params_;
    CircuitDag dag_;
    Layout layout_;
    RoutedProgram out_;

    std::vector<int> front_;  // sorted gate ids
    std::vector<long long> front_since_;
    std::vector<int> next_on_wire_;

    std::vector<ExtendedSetEntry> inter_extset_;
    std::vector<int> layer_depth_;
    std::uint64_t version_ = 0;
    std::uint64_t extset_version_ = std::numeric_limits<std::uint64_t>::max();

    std::optional<Checkpoint> checkpoint_;
    int last_progress_count_ = 0;
    int stall_ = 0;
    bool aborted_ = false;

    long long iterations_ = 0;
    long long flagged_iterations_ = 0;
    int scored_this_iter_ = 0;
    int max_scored_ = 0;
};

/// Routes a circuit from a fixed initial layout.
inline RouteResult route(const CircuitDag& dag, const Layout& layout,
                         const Architecture& arch,
                         const DistanceTables& tables,
                         const RouterParams& params) {
    Router router(dag, layout, arch, tables, params);
    return router.run();
}

}  // namespace dsabre
