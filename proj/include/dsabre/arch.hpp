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
 * @file arch.hpp
 * @brief Multi-core device model: cores of physical slots, intra-core edges,
 *        and weighted inter-core EPR links.
 *
 * The device is a partitioned graph. Intra-core edges have unit weight;
 * an inter-core link connects one communication-port slot per side and
 * costs w_link. A port is an ordinary slot and may hold a data qubit.
 */

#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dsabre {

using SlotId = int;
using CoreId = int;

/// One QPU partition: its slots (ordered; row-major for grid cores) and
/// the intra-core coupling edges between them.
struct CoreDesc {
    std::vector<SlotId> slots;
    std::vector<std::pair<SlotId, SlotId>> intra_edges;
    /// Geometric corner slots, filled by the grid builder (used by corner
    /// removal; empty for hand-built cores).
    std::vector<SlotId> corner_slots;
};

/// An inter-core EPR channel between two communication-port slots.
struct InterLink {
    CoreId core_a;
    SlotId port_a;
    CoreId core_b;
    SlotId port_b;
};

enum class GridFamily { B, H };

/**
 * @brief Immutable multi-core architecture.
 *
 * Slot ids must be dense (0..n_slots-1) and each slot belongs to exactly
 * one core. Safe to share read-only across concurrent routing runs.
 */
class Architecture {
public:
    Architecture(std::vector<CoreDesc> cores, std::vector<InterLink> links,
                 int w_link, std::string spec = "")
        : cores_(std::move(cores)), links_(std::move(links)), w_link_(w_link),
          spec_(std::move(spec)) {
        if (w_link_ <= 0) {
            throw std::invalid_argument("w_link must be positive");
        }
        build_indices();
        validate();
    }

    [[nodiscard]] int n_slots() const noexcept { return n_slots_; }
    [[nodiscard]] int n_cores() const noexcept {
        return static_cast<int>(cores_.size());
    }
    [[nodiscard]] int w_link() const noexcept { return w_link_; }
    [[nodiscard]] const std::string& spec_string() const noexcept { return spec_; }

    [[nodiscard]] const std::vector<CoreDesc>& cores() const noexcept {
        return cores_;
    }
    [[nodiscard]] const CoreDesc& core(CoreId c) const { return cores_.at(c); }
    [[nodiscard]] const std::vector<InterLink>& links() const noexcept {
        return links_;
    }

    [[nodiscard]] CoreId core_of(SlotId s) const { return core_of_.at(s); }

    /// Intra-core neighbours of a slot, ascending.
    [[nodiscard]] const std::vector<SlotId>& neighbours(SlotId s) const {
        return adj_.at(s);
    }

    [[nodiscard]] bool intra_adjacent(SlotId a, SlotId b) const {
        const auto& na = adj_.at(a);
        return std::binary_search(na.begin(), na.end(), b);
    }

    [[nodiscard]] bool is_port(SlotId s) const {
        return is_port_.at(s) != 0;
    }

    /// Links incident to a core as (neighbour core, link index), sorted by
    /// neighbour core then link index.
    [[nodiscard]] const std::vector<std::pair<CoreId, int>>&
    links_of_core(CoreId c) const {
        return core_links_.at(c);
    }

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j;
        j["w_link"] = w_link_;
        if (!spec_.empty()) j["spec"] = spec_;
        j["cores"] = nlohmann::json::array();
        for (std::size_t c = 0; c < cores_.size(); ++c) {
            nlohmann::json jc;
            jc["id"] = c;
            jc["slots"] = cores_[c].slots;
            jc["edges"] = nlohmann::json::array();
            for (auto [u, v] : cores_[c].intra_edges) {
                jc["edges"].push_back({u, v});
            }
            jc["corners"] = cores_[c].corner_slots;
            j["cores"].push_back(std::move(jc));
        }
        j["links"] = nlohmann::json::array();
        for (const auto& l : links_) {
            j["links"].push_back({{"core_a", l.core_a},
                                  {"port_a", l.port_a},
                                  {"core_b", l.core_b},
                                  {"port_b", l.port_b}});
        }
        return j;
    }

private:
    void build_indices() {
        n_slots_ = 0;
        for (const auto& c : cores_) {
            n_slots_ += static_cast<int>(c.slots.size());
        }
        core_of_.assign(n_slots_, -1);
        for (std::size_t c = 0; c < cores_.size(); ++c) {
            for (SlotId s : cores_[c].slots) {
                if (s < 0 || s >= n_slots_) {
                    throw std::invalid_argument(
                        "slot ids must be dense in [0, n_slots)");
                }
                if (core_of_[s] != -1) {
                    throw std::invalid_argument(
                        "slot " + std::to_string(s) +
                        " assigned to more than one core");
                }
                core_of_[s] = static_cast<CoreId>(c);
            }
        }
        adj_.assign(n_slots_, {});
        for (auto& c : cores_) {
            // Canonical edge order for deterministic enumeration.
            for (auto& e : c.intra_edges) {
                if (e.first > e.second) std::swap(e.first, e.second);
            }
            std::sort(c.intra_edges.begin(), c.intra_edges.end());
            c.intra_edges.erase(
                std::unique(c.intra_edges.begin(), c.intra_edges.end()),
                c.intra_edges.end());
            for (auto [u, v] : c.intra_edges) {
                adj_[u].push_back(v);
                adj_[v].push_back(u);
            }
        }
        for (auto& n : adj_) std::sort(n.begin(), n.end());
        is_port_.assign(n_slots_, 0);
        core_links_.assign(cores_.size(), {});
        for (std::size_t i = 0; i < links_.size(); ++i) {
            const auto& l = links_[i];
            is_port_[l.port_a] = 1;
            is_port_[l.port_b] = 1;
            core_links_[l.core_a].emplace_back(l.core_b, static_cast<int>(i));
            core_links_[l.core_b].emplace_back(l.core_a, static_cast<int>(i));
        }
        for (auto& v : core_links_) std::sort(v.begin(), v.end());
    }

    void validate() const {
        for (SlotId s = 0; s < n_slots_; ++s) {
            if (core_of_[s] == -1) {
                throw std::invalid_argument("slot " + std::to_string(s) +
                                            " belongs to no core");
            }
        }
        for (std::size_t c = 0; c < cores_.size(); ++c) {
            for (auto [u, v] : cores_[c].intra_edges) {
                if (u == v) {
                    throw std::invalid_argument("self-loop intra edge");
                }
                if (core_of_[u] != static_cast<CoreId>(c) ||
                    core_of_[v] != static_cast<CoreId>(c)) {
                    throw std::invalid_argument(
                        "intra edge crosses core boundary");
                }
            }
            if (!core_connected(static_cast<CoreId>(c))) {
                throw std::invalid_argument("core " + std::to_string(c) +
                                            " intra graph is disconnected");
            }
        }
        for (const auto& l : links_) {
            if (l.core_a == l.core_b) {
                throw std::invalid_argument("inter link must join two cores");
            }
            if (core_of_.at(l.port_a) != l.core_a ||
                core_of_.at(l.port_b) != l.core_b) {
                throw std::invalid_argument(
                    "inter link port not in its declared core");
            }
            // Ports need an intra neighbour to serve as staging slot.
            if (adj_[l.port_a].empty() || adj_[l.port_b].empty()) {
                throw std::invalid_argument(
                    "inter link port has no intra-core neighbour");
            }
        }
    }

    [[nodiscard]] bool core_connected(CoreId c) const {
        const auto& slots = cores_[c].slots;
        if (slots.empty()) return true;
        std::set<SlotId> seen;
        std::queue<SlotId> q;
        q.push(slots.front());
        seen.insert(slots.front());
        while (!q.empty()) {
            SlotId s = q.front();
            q.pop();
            for (SlotId t : adj_[s]) {
                if (core_of_[t] == c && seen.insert(t).second) q.push(t);
            }
        }
        return seen.size() == slots.size();
    }

    std::vector<CoreDesc> cores_;
    std::vector<InterLink> links_;
    int w_link_;
    std::string spec_;
    int n_slots_ = 0;
    std::vector<CoreId> core_of_;
    std::vector<std::vector<SlotId>> adj_;
    std::vector<char> is_port_;
    std::vector<std::vector<std::pair<CoreId, int>>> core_links_;
};

namespace detail {
inline int clamp_coord(int v, int lo, int hi) {
    return std::max(lo, std::min(v, hi));
}
}  // namespace detail

/**
 * @brief Builds a grid-of-grids device: core_rows x core_cols cores, each an
 *        m x m nearest-neighbour grid, one link per adjacent core pair.
 *
 * Port placement, for cores indexed (R, C) row-major:
 *  - Horizontal pair (R,C)-(R,C+1), both families: ports on the facing
 *    boundary columns at row m/2-1 for even R and m/2 for odd R.
 *  - Vertical pair (R,C)-(R+1,C), B family: both ports in column m/2-1 for
 *    even C and m/2 for odd C.
 *  - Vertical pair, H family: the upper core's bottom port sits in column
 *    m/2-1 when C == 0 and m/2 otherwise; the lower core's top port in
 *    column m/2 when C == core_cols-1 and m/2-1 otherwise.
 * All coordinates clamp into [0, m-1].
 */
inline Architecture build_grid_arch(GridFamily family, int core_rows,
                                    int core_cols, int m, int w_link = 10) {
    if (core_rows < 1 || core_cols < 1 || m < 1) {
        throw std::invalid_argument("grid dimensions must be >= 1");
    }
    const int mm = m * m;
    auto slot = [&](int R, int C, int r, int c) {
        return (R * core_cols + C) * mm + r * m + c;
    };

    std::vector<CoreDesc> cores;
    cores.reserve(static_cast<std::size_t>(core_rows) * core_cols);
    for (int R = 0; R < core_rows; ++R) {
        for (int C = 0; C < core_cols; ++C) {
            CoreDesc core;
            core.slots.reserve(mm);
            for (int r = 0; r < m; ++r) {
                for (int c = 0; c < m; ++c) {
                    core.slots.push_back(slot(R, C, r, c));
                    if (c + 1 < m) {
                        core.intra_edges.emplace_back(slot(R, C, r, c),
                                                      slot(R, C, r, c + 1));
                    }
                    if (r + 1 < m) {
                        core.intra_edges.emplace_back(slot(R, C, r, c),
                                                      slot(R, C, r + 1, c));
                    }
                }
            }
            if (m >= 2) {
                core.corner_slots = {slot(R, C, 0, 0), slot(R, C, 0, m - 1),
                                     slot(R, C, m - 1, 0),
                                     slot(R, C, m - 1, m - 1)};
            }
            cores.push_back(std::move(core));
        }
    }

    auto clamp = [&](int v) { return detail::clamp_coord(v, 0, m - 1); };
    std::vector<InterLink> links;
    for (int R = 0; R < core_rows; ++R) {
        for (int C = 0; C < core_cols; ++C) {
            const CoreId here = R * core_cols + C;
            if (C + 1 < core_cols) {
                const int hr = clamp(m / 2 - 1 + (R % 2));
                links.push_back({here, slot(R, C, hr, m - 1), here + 1,
                                 slot(R, C + 1, hr, 0)});
            }
            if (R + 1 < core_rows) {
                const CoreId below = here + core_cols;
                int down_col;
                int up_col;
                if (family == GridFamily::B) {
                    down_col = up_col = clamp(m / 2 - 1 + (C % 2));
                } else {
                    down_col = clamp(C == 0 ? m / 2 - 1 : m / 2);
                    up_col = clamp(C == core_cols - 1 ? m / 2 : m / 2 - 1);
                }
                links.push_back({here, slot(R, C, m - 1, down_col), below,
                                 slot(R + 1, C, 0, up_col)});
            }
        }
    }

    std::ostringstream spec;
    spec << (family == GridFamily::B ? "bgrid:" : "hgrid:") << core_rows << "x"
         << core_cols << ":" << m << "x" << m;
    return Architecture(std::move(cores), std::move(links), w_link, spec.str());
}

/// Parses `bgrid:RxS:mxm` / `hgrid:RxS:mxm`, e.g. "hgrid:2x3:4x4".
inline Architecture arch_from_spec(const std::string& spec, int w_link = 10) {
    auto fail = [&] {
        throw std::invalid_argument("bad architecture spec '" + spec +
                                    "' (expected e.g. hgrid:2x3:4x4)");
    };
    auto p1 = spec.find(':');
    auto p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) fail();
    const std::string fam = spec.substr(0, p1);
    GridFamily family;
    if (fam == "bgrid") {
        family = GridFamily::B;
    } else if (fam == "hgrid") {
        family = GridFamily::H;
    } else {
        fail();
        family = GridFamily::B;  // unreachable
    }
    auto parse_pair = [&](const std::string& s, int& a, int& b) {
        auto x = s.find('x');
        if (x == std::string::npos) fail();
        try {
            a = std::stoi(s.substr(0, x));
            b = std::stoi(s.substr(x + 1));
        } catch (const std::exception&) {
            fail();
        }
    };
    int rows = 0, cols = 0, ma = 0, mb = 0;
    parse_pair(spec.substr(p1 + 1, p2 - p1 - 1), rows, cols);
    parse_pair(spec.substr(p2 + 1), ma, mb);
    if (ma != mb) {
        throw std::invalid_argument("cores must be square (got " +
                                    spec.substr(p2 + 1) + ")");
    }
    return build_grid_arch(family, rows, cols, ma, w_link);
}

}  // namespace dsabre
