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
 * @file layout.hpp
 * @brief Bijection between logical qubits and a subset of physical slots.
 *
 * to_phys is injective over the logical qubits and to_logical is its exact
 * inverse on occupied slots; per-core free-slot counts are maintained under
 * every mutation.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "arch.hpp"

namespace dsabre {

class Layout {
public:
    /// Places logical qubit i on to_phys[i]; slots must be distinct.
    Layout(const Architecture& arch, std::vector<SlotId> to_phys)
        : to_phys_(std::move(to_phys)) {
        n_cores_ = arch.n_cores();
        core_of_.resize(arch.n_slots());
        for (SlotId s = 0; s < arch.n_slots(); ++s) {
            core_of_[s] = arch.core_of(s);
        }
        to_logical_.assign(arch.n_slots(), -1);
        free_count_.assign(n_cores_, 0);
        for (CoreId c = 0; c < n_cores_; ++c) {
            free_count_[c] = static_cast<int>(arch.core(c).slots.size());
        }
        for (std::size_t q = 0; q < to_phys_.size(); ++q) {
            const SlotId s = to_phys_[q];
            if (s < 0 || s >= arch.n_slots()) {
                throw std::out_of_range("layout slot out of range");
            }
            if (to_logical_[s] != -1) {
                throw std::invalid_argument(
                    "layout places two qubits on slot " + std::to_string(s));
            }
            to_logical_[s] = static_cast<int>(q);
            --free_count_[core_of_[s]];
        }
    }

    [[nodiscard]] int n_logical() const noexcept {
        return static_cast<int>(to_phys_.size());
    }
    [[nodiscard]] int n_slots() const noexcept {
        return static_cast<int>(to_logical_.size());
    }
    [[nodiscard]] SlotId slot_of(int q) const { return to_phys_.at(q); }
    /// Logical occupant of a slot, or -1 when empty.
    [[nodiscard]] int occupant(SlotId s) const { return to_logical_.at(s); }
    [[nodiscard]] CoreId core_of(SlotId s) const { return core_of_.at(s); }
    [[nodiscard]] CoreId core_of_qubit(int q) const {
        return core_of_.at(to_phys_.at(q));
    }
    [[nodiscard]] int free_in_core(CoreId c) const { return free_count_.at(c); }

    /// Exchanges the occupants of two distinct slots (either may be empty).
    void apply_swap(SlotId u, SlotId v) {
        if (u == v) {
            throw std::invalid_argument("swap needs two distinct slots");
        }
        const int qu = to_logical_.at(u);
        const int qv = to_logical_.at(v);
        to_logical_[u] = qv;
        to_logical_[v] = qu;
        if (qu >= 0) to_phys_[qu] = v;
        if (qv >= 0) to_phys_[qv] = u;
        if (core_of_[u] != core_of_[v] && (qu >= 0) != (qv >= 0)) {
            const CoreId gains = qu >= 0 ? core_of_[u] : core_of_[v];
            const CoreId loses = qu >= 0 ? core_of_[v] : core_of_[u];
            ++free_count_[gains];
            --free_count_[loses];
        }
    }

    /// Relocates q to an empty slot in another core.
    void apply_teleport(int q, SlotId dst) {
        if (to_logical_.at(dst) != -1) {
            throw std::invalid_argument("teleport destination occupied");
        }
        const SlotId src = to_phys_.at(q);
        if (core_of_[src] == core_of_[dst]) {
            throw std::invalid_argument("teleport within one core");
        }
        to_logical_[src] = -1;
        to_logical_[dst] = q;
        to_phys_[q] = dst;
        ++free_count_[core_of_[src]];
        --free_count_[core_of_[dst]];
    }

    [[nodiscard]] const std::vector<SlotId>& assignments() const noexcept {
        return to_phys_;
    }

    [[nodiscard]] bool operator==(const Layout& other) const {
        return to_phys_ == other.to_phys_ && to_logical_ == other.to_logical_;
    }

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (int q = 0; q < n_logical(); ++q) {
            j.push_back({{"logical", q},
                         {"core", core_of_[to_phys_[q]]},
                         {"slot", to_phys_[q]}});
        }
        return j;
    }

    static Layout from_json(const Architecture& arch, const nlohmann::json& j) {
        std::vector<SlotId> to_phys;
        for (const auto& e : j) {
            const int q = e.at("logical").get<int>();
            if (q >= static_cast<int>(to_phys.size())) {
                to_phys.resize(q + 1, -1);
            }
            to_phys[q] = e.at("slot").get<SlotId>();
        }
        for (SlotId s : to_phys) {
            if (s < 0) throw std::invalid_argument("layout file skips a qubit");
        }
        return Layout(arch, std::move(to_phys));
    }

private:
    std::vector<SlotId> to_phys_;
    std::vector<int> to_logical_;
    std::vector<int> free_count_;
    std::vector<CoreId> core_of_;
    int n_cores_ = 0;
};

/**
 * @brief Slots excluded from initial placement: each core's geometric
 *        corners that are not communication ports.
 *
 * Keeps reserve slots per core for eviction scratch space. Relies on the
 * corner lists the grid builder records; hand-built cores without corner
 * info lose nothing.
 */
inline std::vector<SlotId> corner_removed_slots(const Architecture& arch) {
    std::vector<SlotId> removed;
    for (const auto& core : arch.cores()) {
        for (SlotId s : core.corner_slots) {
            if (!arch.is_port(s)) removed.push_back(s);
        }
    }
    std::sort(removed.begin(), removed.end());
    return removed;
}

/// All slots minus the removed corners (the initial-placement domain).
inline std::vector<SlotId> usable_slots(const Architecture& arch,
                                        bool corner_removal) {
    std::vector<char> blocked(arch.n_slots(), 0);
    if (corner_removal) {
        for (SlotId s : corner_removed_slots(arch)) blocked[s] = 1;
    }
    std::vector<SlotId> usable;
    for (SlotId s = 0; s < arch.n_slots(); ++s) {
        if (!blocked[s]) usable.push_back(s);
    }
    return usable;
}

}  // namespace dsabre
