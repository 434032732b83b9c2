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
 * @file sabre_layout.hpp
 * @brief Bidirectional initial-layout search.
 *
 * Each trial seeds a random injective placement, routes forward, routes the
 * reversed circuit from the forward output layout, then routes forward
 * again from the backward output. The starting layout of the better forward
 * pass wins the trial (ties keep the first); the best trial by EPR wins
 * overall. Deterministic given (seed, trials).
 *
 * With corner removal on, the whole search runs on a copy of the device
 * with the non-port corner slots deleted, so no pass can park a qubit on a
 * reserved corner; the winning layout is mapped back to the full device.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "layout.hpp"
#include "rng.hpp"
#include "router.hpp"

namespace dsabre {

inline Layout random_layout(const Architecture& arch,
                            const std::vector<SlotId>& usable, int n_logical,
                            std::uint64_t seed) {
    if (n_logical > static_cast<int>(usable.size())) {
        throw std::invalid_argument(
            "circuit needs " + std::to_string(n_logical) +
            " qubits but only " + std::to_string(usable.size()) +
            " usable slots exist");
    }
    std::vector<SlotId> shuffled = usable;
    std::mt19937_64 rng(splitmix64(seed));
    deterministic_shuffle(shuffled, rng);
    shuffled.resize(n_logical);
    return Layout(arch, std::move(shuffled));
}

/**
 * Deterministic clustered seed: BFS over the circuit's interaction graph
 * from a seed-chosen start qubit, filling cores along a nearest-neighbour
 * walk of the core graph. Keeps strongly interacting qubits co-located,
 * which random shuffles essentially never achieve on chain-like circuits.
 */
inline Layout clustered_layout(const CircuitDag& dag, const Architecture& arch,
                               const std::vector<SlotId>& usable,
                               std::uint64_t seed) {
    const int n = dag.width();
    if (n > static_cast<int>(usable.size())) {
        throw std::invalid_argument("circuit wider than the usable slots");
    }
    std::vector<std::set<int>> nbr(n);
    for (const auto& g : dag.gates()) {
        if (!g.is_two_q()) continue;
        nbr[g.qubits[0]].insert(g.qubits[1]);
        nbr[g.qubits[1]].insert(g.qubits[0]);
    }
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    auto visit = [&](int q) {
        if (!seen[q]) {
            seen[q] = 1;
            queue.push(q);
        }
    };
    visit(n == 0 ? 0 : static_cast<int>(seed % static_cast<std::uint64_t>(n)));
    for (int scan = 0; static_cast<int>(order.size()) < n;) {
        if (queue.empty()) {
            while (seen[scan]) ++scan;
            visit(scan);
        }
        const int q = queue.front();
        queue.pop();
        order.push_back(q);
        for (int o : nbr[q]) visit(o);
    }

    // Nearest-neighbour walk over the core graph, lowest index first.
    std::vector<CoreId> core_order;
    std::vector<char> done(arch.n_cores(), 0);
    CoreId cur = 0;
    for (int k = 0; k < arch.n_cores(); ++k) {
        core_order.push_back(cur);
        done[cur] = 1;
        CoreId next = -1;
        for (auto [other, link] : arch.links_of_core(cur)) {
            if (!done[other] && (next < 0 || other < next)) next = other;
        }
        if (next < 0) {
            for (CoreId c = 0; c < arch.n_cores(); ++c) {
                if (!done[c]) {
                    next = c;
                    break;
                }
            }
        }
        if (next < 0) break;
        cur = next;
    }

    std::vector<std::vector<SlotId>> usable_by_core(arch.n_cores());
    for (SlotId s : usable) usable_by_core[arch.core_of(s)].push_back(s);
    std::vector<SlotId> to_phys(n, -1);
    std::size_t core_idx = 0;
    std::size_t slot_idx = 0;
    for (int q : order) {
        while (slot_idx >= usable_by_core[core_order[core_idx]].size()) {
            ++core_idx;
            slot_idx = 0;
        }
        to_phys[q] = usable_by_core[core_order[core_idx]][slot_idx++];
    }
    return Layout(arch, std::move(to_phys));
}

/// The device with the listed slots deleted and ids re-densified;
/// new_to_old maps reduced slot ids back to the original ones.
inline Architecture reduced_architecture(const Architecture& arch,
                                         const std::vector<SlotId>& removed,
                                         std::vector<SlotId>& new_to_old) {
    std::vector<int> old_to_new(arch.n_slots(), -1);
    new_to_old.clear();
    for (SlotId s = 0; s < arch.n_slots(); ++s) {
        if (!std::binary_search(removed.begin(), removed.end(), s)) {
            old_to_new[s] = static_cast<int>(new_to_old.size());
            new_to_old.push_back(s);
        }
    }
    std::vector<CoreDesc> cores;
    cores.reserve(arch.cores().size());
    for (const auto& core : arch.cores()) {
        CoreDesc c;
        for (SlotId s : core.slots) {
            if (old_to_new[s] >= 0) c.slots.push_back(old_to_new[s]);
        }
        for (auto [u, v] : core.intra_edges) {
            if (old_to_new[u] >= 0 && old_to_new[v] >= 0) {
                c.intra_edges.emplace_back(old_to_new[u], old_to_new[v]);
            }
        }
        cores.push_back(std::move(c));
    }
    std::vector<InterLink> links;
    links.reserve(arch.links().size());
    for (const auto& l : arch.links()) {
        links.push_back({l.core_a, old_to_new[l.port_a], l.core_b,
                         old_to_new[l.port_b]});
    }
    return Architecture(std::move(cores), std::move(links), arch.w_link(),
                        arch.spec_string() + ":reduced");
}

namespace detail {

/**
 * One swap-only SABRE pass over the flat weighted graph (links are
 * ordinary weight-w_link edges). Only the final layout matters; no ops are
 * recorded. This is the annealing engine of the layout search: dragging
 * states across links by swaps consolidates interacting qubits into cores,
 * which the teleport router's pass dynamics do not do on their own.
 */
inline Layout flat_sabre_pass(const CircuitDag& source,
                              const Architecture& arch,
                              const DistanceTables& tables,
                              const RouterParams& params, Layout layout) {
    CircuitDag dag = source;
    dag.reset_run_state();
    std::vector<int> front;
    for (int g : dag.front_scan()) front.push_back(g);

    // Flat adjacency: intra edges plus links.
    std::vector<std::pair<SlotId, SlotId>> edges;
    for (const auto& core : arch.cores()) {
        edges.insert(edges.end(), core.intra_edges.begin(),
                     core.intra_edges.end());
    }
    for (const auto& l : arch.links()) {
        edges.emplace_back(std::min(l.port_a, l.port_b),
                           std::max(l.port_a, l.port_b));
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::vector<SlotId>> adj(arch.n_slots());
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& n : adj) std::sort(n.begin(), n.end());

    auto adjacent = [&](SlotId a, SlotId b) {
        return std::binary_search(adj[a].begin(), adj[a].end(), b);
    };
    auto execute = [&](int g) {
        std::vector<int> newly;
        dag.execute(g, newly);
        front.erase(std::find(front.begin(), front.end(), g));
        std::sort(newly.begin(), newly.end());
        for (int s : newly) {
            front.insert(std::lower_bound(front.begin(), front.end(), s), s);
        }
    };
    auto drain = [&] {
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < front.size();) {
                const int g = front[i];
                const Gate& gate = dag.gate(g);
                const bool fire =
                    !gate.is_two_q() ||
                    adjacent(layout.slot_of(gate.qubits[0]),
                             layout.slot_of(gate.qubits[1]));
                if (fire) {
                    execute(g);
                    progress = true;
                } else {
                    ++i;
                }
            }
        }
    };

    // Lookahead window: BFS layers beyond the front, gamma^layer weights.
    auto extended_set = [&] {
        std::vector<std::pair<int, double>> ext;  // (gate, weight)
        std::vector<int> indeg(dag.size());
        for (int g = 0; g < dag.size(); ++g) {
            indeg[g] = dag.remaining_in_degree(g);
        }
        std::vector<int> current = front;
        int layer = 1;
        while (!current.empty() &&
               static_cast<int>(ext.size()) < params.ext_cap) {
            std::vector<int> next;
            for (int g : current) {
                for (int w = 0; w < dag.gate(g).n_qubits(); ++w) {
                    const int s = dag.succ(g)[w];
                    if (s >= 0 && --indeg[s] == 0) next.push_back(s);
                }
            }
            std::sort(next.begin(), next.end());
            for (int s : next) {
                if (dag.gate(s).is_two_q() &&
                    static_cast<int>(ext.size()) < params.ext_cap) {
                    ext.emplace_back(s, std::pow(params.gamma, layer));
                }
            }
            current = std::move(next);
            ++layer;
        }
        return ext;
    };

    long long stall = 0;
    drain();
    while (dag.unexecuted_count() > 0) {
        if (stall > 8LL * arch.n_slots()) {
            // Release valve: force the lowest-id front gate together.
            const int g = front.front();
            const Gate& gate = dag.gate(g);
            while (!adjacent(layout.slot_of(gate.qubits[0]),
                             layout.slot_of(gate.qubits[1]))) {
                const SlotId from = layout.slot_of(gate.qubits[0]);
                const SlotId to = layout.slot_of(gate.qubits[1]);
                SlotId step = -1;
                int best = std::numeric_limits<int>::max();
                for (SlotId nb : adj[from]) {
                    const int d = tables.phys(nb, to);
                    if (d < best) {
                        best = d;
                        step = nb;
                    }
                }
                layout.apply_swap(from, step);
            }
            stall = 0;
            drain();
            continue;
        }
        const auto ext = extended_set();
        std::set<int> relevant;
        for (int g : front) {
            const Gate& gate = dag.gate(g);
            if (!gate.is_two_q()) continue;
            relevant.insert(gate.qubits[0]);
            relevant.insert(gate.qubits[1]);
        }
        double best = -std::numeric_limits<double>::infinity();
        SlotId bu = -1;
        SlotId bv = -1;
        for (auto [u, v] : edges) {
            const int qu = layout.occupant(u);
            const int qv = layout.occupant(v);
            if ((qu < 0 || !relevant.count(qu)) &&
                (qv < 0 || !relevant.count(qv))) {
                continue;
            }
            auto moved = [&](SlotId s) { return s == u ? v : s == v ? u : s; };
            auto delta = [&](int g) {
                const Gate& gate = dag.gate(g);
                const SlotId a = layout.slot_of(gate.qubits[0]);
                const SlotId b = layout.slot_of(gate.qubits[1]);
                return static_cast<double>(tables.phys(a, b) -
                                           tables.phys(moved(a), moved(b)));
            };
            double score = 0.0;
            int nf = 0;
            double df = 0.0;
            for (int g : front) {
                if (!dag.gate(g).is_two_q()) continue;
                df += delta(g);
                ++nf;
            }
            if (nf > 0) score += df / nf;
            if (!ext.empty()) {
                double de = 0.0;
                for (auto [g, w] : ext) de += w * delta(g);
                score += params.w_e * de / static_cast<double>(ext.size());
            }
            if (score > best) {
                best = score;
                bu = u;
                bv = v;
            }
        }
        if (bu < 0) break;  // no scorable swap; nothing left to do
        layout.apply_swap(bu, bv);
        ++stall;
        const int before = dag.executed_count();
        drain();
        if (dag.executed_count() > before) stall = 0;
    }
    return layout;
}

/// Bidirectional flat-SABRE annealing: fwd/bwd sweep pairs from a random
/// seed, as a stand-in for an external layout pass.
inline Layout anneal_layout(const CircuitDag& dag, const CircuitDag& reversed,
                            const Architecture& arch,
                            const DistanceTables& tables,
                            const RouterParams& params, Layout layout,
                            int rounds) {
    for (int r = 0; r < rounds; ++r) {
        layout = flat_sabre_pass(dag, arch, tables, params, std::move(layout));
        layout =
            flat_sabre_pass(reversed, arch, tables, params, std::move(layout));
    }
    return layout;
}

inline Layout layout_search(const CircuitDag& dag, const Architecture& arch,
                            const DistanceTables& tables,
                            const RouterParams& params, std::uint64_t seed,
                            int trials) {
    const auto usable = usable_slots(arch, false);
    const CircuitDag reversed = reverse_dag(dag);

    int best_epr = std::numeric_limits<int>::max();
    Layout best =
        random_layout(arch, usable, dag.width(), derive_seed(seed, 0));
    bool have_complete = false;

    for (int t = 0; t < trials; ++t) {
        // Trial 0 seeds from interaction clustering; later trials use the
        // seeded random shuffle. Both then anneal before the routing passes.
        Layout seeded =
            t == 0 ? clustered_layout(dag, arch, usable, derive_seed(seed, 0))
                   : random_layout(arch, usable, dag.width(),
                                   derive_seed(seed, t));
        Layout start = anneal_layout(dag, reversed, arch, tables, params,
                                     std::move(seeded), 2);
        auto fwd1 = route(dag, start, arch, tables, params);

        int trial_epr = std::numeric_limits<int>::max();
        Layout trial_layout = start;
        if (fwd1.status == RouteStatus::complete) {
            trial_epr = fwd1.metrics.epr;
            auto bwd = route(reversed, fwd1.final_layout, arch, tables, params);
            if (bwd.status == RouteStatus::complete) {
                auto fwd2 = route(dag, bwd.final_layout, arch, tables, params);
                if (fwd2.status == RouteStatus::complete &&
                    fwd2.metrics.epr < trial_epr) {
                    trial_epr = fwd2.metrics.epr;
                    trial_layout = bwd.final_layout;
                }
            }
        }
        if (trial_epr < std::numeric_limits<int>::max() &&
            (!have_complete || trial_epr < best_epr)) {
            best_epr = trial_epr;
            best = trial_layout;
            have_complete = true;
        }
    }
    return best;
}

}  // namespace detail

inline Layout initial_layout(const CircuitDag& dag, const Architecture& arch,
                             const DistanceTables& tables,
                             const RouterParams& params, std::uint64_t seed,
                             int trials = 3, bool corner_removal = true) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!corner_removal) {
        return detail::layout_search(dag, arch, tables, params, seed, trials);
    }
    std::vector<SlotId> new_to_old;
    const Architecture reduced =
        reduced_architecture(arch, corner_removed_slots(arch), new_to_old);
    const DistanceTables reduced_tables = precompute_distances(reduced);
    Layout found = detail::layout_search(dag, reduced, reduced_tables, params,
                                         seed, trials);
    std::vector<SlotId> mapped;
    mapped.reserve(found.assignments().size());
    for (SlotId s : found.assignments()) mapped.push_back(new_to_old[s]);
    return Layout(arch, std::move(mapped));
}

}  // namespace dsabre
