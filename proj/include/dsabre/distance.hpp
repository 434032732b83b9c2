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
 * @file distance.hpp
 * @brief Two-level distance precomputation for multi-core devices.
 *
 * Three tables are built once per architecture and queried in O(1):
 *  - d_intra: per-core all-pairs hop counts,
 *  - d_core:  all-pairs core distances on the core multigraph (w_link per
 *    link) with a canonical next-hop table,
 *  - d_phys:  all-pairs slot distances on the full weighted graph,
 *    recovered from per-core tables plus shortest paths on a reduced graph
 *    over the communication ports (so traversal cost inside intermediate
 *    cores is accounted for, and the result matches a flat Dijkstra).
 *
 * d_phys is stored densely up to 1024 slots and computed on demand above.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "arch.hpp"

namespace dsabre {

class DistanceTables {
public:
    static constexpr int kInf = std::numeric_limits<int>::max() / 4;
    static constexpr int kDenseLimit = 1024;

    explicit DistanceTables(const Architecture& arch) { build(arch); }

    /// Hop distance between two slots of the same core.
    [[nodiscard]] int intra(SlotId a, SlotId b) const {
        const CoreId c = core_of_[a];
        if (core_of_[b] != c) {
            throw std::invalid_argument("intra distance across cores");
        }
        return intra_[c][local_[a] * core_size_[c] + local_[b]];
    }

    /// Core-graph distance in weight units (hops * w_link).
    [[nodiscard]] int core_dist(CoreId a, CoreId b) const {
        return core_dist_[a * n_cores_ + b];
    }

    [[nodiscard]] int core_hops(CoreId a, CoreId b) const {
        return core_dist(a, b) / w_link_;
    }

    /// Weighted distance between any two slots on the full device graph.
    [[nodiscard]] int phys(SlotId a, SlotId b) const {
        if (!phys_.empty()) return phys_[a * n_slots_ + b];
        return phys_query(a, b);
    }

    /// Canonical shortest core path from c1 to c2, both endpoints included.
    [[nodiscard]] std::vector<CoreId> core_path(CoreId c1, CoreId c2) const {
        if (c1 < 0 || c1 >= n_cores_ || c2 < 0 || c2 >= n_cores_) {
            throw std::invalid_argument("invalid core id");
        }
        std::vector<CoreId> rev;
        for (CoreId c = c2; c != c1; c = core_parent_[c1 * n_cores_ + c]) {
            rev.push_back(c);
        }
        rev.push_back(c1);
        return {rev.rbegin(), rev.rend()};
    }

    [[nodiscard]] int w_link() const noexcept { return w_link_; }
    [[nodiscard]] int n_slots() const noexcept { return n_slots_; }
    [[nodiscard]] int n_cores() const noexcept { return n_cores_; }

    /// Max weighted slot distance over all pairs (computed lazily).
    [[nodiscard]] int physical_diameter() const {
        if (diameter_ < 0) {
            int d = 0;
            for (SlotId a = 0; a < n_slots_; ++a) {
                for (SlotId b = a + 1; b < n_slots_; ++b) {
                    d = std::max(d, phys(a, b));
                }
            }
            diameter_ = d;
        }
        return diameter_;
    }

private:
    void build(const Architecture& arch) {
        n_slots_ = arch.n_slots();
        n_cores_ = arch.n_cores();
        w_link_ = arch.w_link();
        core_of_.resize(n_slots_);
        local_.resize(n_slots_);
        core_size_.resize(n_cores_);
        for (SlotId s = 0; s < n_slots_; ++s) core_of_[s] = arch.core_of(s);
        for (CoreId c = 0; c < n_cores_; ++c) {
            const auto& slots = arch.core(c).slots;
            core_size_[c] = static_cast<int>(slots.size());
            for (std::size_t i = 0; i < slots.size(); ++i) {
                local_[slots[i]] = static_cast<int>(i);
            }
        }
        build_intra(arch);
        build_core_graph(arch);
        build_port_graph(arch);
        if (n_slots_ <= kDenseLimit) {
            phys_.resize(static_cast<std::size_t>(n_slots_) * n_slots_);
            for (SlotId a = 0; a < n_slots_; ++a) {
                for (SlotId b = 0; b < n_slots_; ++b) {
                    phys_[a * n_slots_ + b] = phys_query(a, b);
                }
            }
        }
    }

    void build_intra(const Architecture& arch) {
        intra_.resize(n_cores_);
        for (CoreId c = 0; c < n_cores_; ++c) {
            const auto& slots = arch.core(c).slots;
            const int n = core_size_[c];
            intra_[c].assign(static_cast<std::size_t>(n) * n, kInf);
            for (SlotId start : slots) {
                auto* row = &intra_[c][local_[start] * n];
                row[local_[start]] = 0;
                std::queue<SlotId> q;
                q.push(start);
                while (!q.empty()) {
                    SlotId u = q.front();
                    q.pop();
                    for (SlotId v : arch.neighbours(u)) {
                        if (core_of_[v] != c) continue;
                        if (row[local_[v]] == kInf) {
                            row[local_[v]] = row[local_[u]] + 1;
                            q.push(v);
                        }
                    }
                }
            }
        }
    }

    void build_core_graph(const Architecture& arch) {
        // Dijkstra from each core; equal-distance parents resolve to the
        // lowest core index so core paths are canonical.
        std::vector<std::vector<CoreId>> nbr(n_cores_);
        for (CoreId c = 0; c < n_cores_; ++c) {
            for (auto [other, link] : arch.links_of_core(c)) {
                nbr[c].push_back(other);
            }
            std::sort(nbr[c].begin(), nbr[c].end());
            nbr[c].erase(std::unique(nbr[c].begin(), nbr[c].end()),
                         nbr[c].end());
        }
        core_dist_.assign(static_cast<std::size_t>(n_cores_) * n_cores_, kInf);
        core_parent_.assign(static_cast<std::size_t>(n_cores_) * n_cores_, -1);
        for (CoreId src = 0; src < n_cores_; ++src) {
            auto* dist = &core_dist_[src * n_cores_];
            auto* parent = &core_parent_[src * n_cores_];
            dist[src] = 0;
            using Item = std::pair<int, CoreId>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.emplace(0, src);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (CoreId v : nbr[u]) {
                    const int nd = d + w_link_;
                    if (nd < dist[v]) {
                        dist[v] = nd;
                        parent[v] = u;
                        pq.emplace(nd, v);
                    } else if (nd == dist[v] && u < parent[v]) {
                        parent[v] = u;
                    }
                }
            }
            for (CoreId v = 0; v < n_cores_; ++v) {
                if (dist[v] == kInf) {
                    throw std::runtime_error(
                        "core graph disconnected: no path between cores " +
                        std::to_string(src) + " and " + std::to_string(v));
                }
            }
        }
    }

    void build_port_graph(const Architecture& arch) {
        ports_of_core_.assign(n_cores_, {});
        std::vector<SlotId> all_ports;
        for (SlotId s = 0; s < n_slots_; ++s) {
            if (arch.is_port(s)) all_ports.push_back(s);
        }
        port_index_.assign(n_slots_, -1);
        for (std::size_t i = 0; i < all_ports.size(); ++i) {
            port_index_[all_ports[i]] = static_cast<int>(i);
            ports_of_core_[core_of_[all_ports[i]]].push_back(all_ports[i]);
        }
        n_ports_ = static_cast<int>(all_ports.size());
        const int np = n_ports_;
        port_dist_.assign(static_cast<std::size_t>(np) * np, kInf);

        // Reduced graph: port-to-port edges inside a core (weight d_intra)
        // plus the links themselves (weight w_link).
        std::vector<std::vector<std::pair<int, int>>> edges(np);
        for (CoreId c = 0; c < n_cores_; ++c) {
            const auto& ps = ports_of_core_[c];
            for (std::size_t i = 0; i < ps.size(); ++i) {
                for (std::size_t j = i + 1; j < ps.size(); ++j) {
                    const int w = intra(ps[i], ps[j]);
                    edges[port_index_[ps[i]]].emplace_back(port_index_[ps[j]], w);
                    edges[port_index_[ps[j]]].emplace_back(port_index_[ps[i]], w);
                }
            }
        }
        for (const auto& l : arch.links()) {
            edges[port_index_[l.port_a]].emplace_back(port_index_[l.port_b],
                                                      w_link_);
            edges[port_index_[l.port_b]].emplace_back(port_index_[l.port_a],
                                                      w_link_);
        }
        for (int src = 0; src < np; ++src) {
            auto* dist = &port_dist_[static_cast<std::size_t>(src) * np];
            dist[src] = 0;
            using Item = std::pair<int, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.emplace(0, src);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (auto [v, w] : edges[u]) {
                    if (d + w < dist[v]) {
                        dist[v] = d + w;
                        pq.emplace(dist[v], v);
                    }
                }
            }
        }
    }

    [[nodiscard]] int phys_query(SlotId a, SlotId b) const {
        if (core_of_[a] == core_of_[b]) return intra(a, b);
        const auto& pa = ports_of_core_[core_of_[a]];
        const auto& pb = ports_of_core_[core_of_[b]];
        int best = kInf;
        for (SlotId ps : pa) {
            const int da = intra(a, ps);
            const auto* prow =
                &port_dist_[static_cast<std::size_t>(port_index_[ps]) *
                            n_ports_];
            for (SlotId pd : pb) {
                const int d = da + prow[port_index_[pd]] + intra(pd, b);
                best = std::min(best, d);
            }
        }
        return best;
    }

    int n_slots_ = 0;
    int n_cores_ = 0;
    int w_link_ = 1;
    std::vector<CoreId> core_of_;
    std::vector<int> local_;
    std::vector<int> core_size_;
    std::vector<std::vector<int>> intra_;
    std::vector<int> core_dist_;
    std::vector<CoreId> core_parent_;
    std::vector<std::vector<SlotId>> ports_of_core_;
    std::vector<int> port_index_;
    int n_ports_ = 0;
    std::vector<int> port_dist_;
    std::vector<int> phys_;
    mutable int diameter_ = -1;
};

inline DistanceTables precompute_distances(const Architecture& arch) {
    return DistanceTables(arch);
}

inline std::vector<CoreId> core_path(const DistanceTables& tables, CoreId c1,
                                     CoreId c2) {
    return tables.core_path(c1, c2);
}

}  // namespace dsabre
