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

#pragma once

#include <stdexcept>

#include <json.hpp>

namespace dsabre {

/**
 * @brief All routing knobs: hardware costs, heuristic weights, congestion
 *        relief thresholds and the ablation switches.
 *
 * The disable_* switches zero out the corresponding term without touching
 * the stored value, so a params echo reproduces a run exactly.
 */
struct RouterParams {
    int c_swap = 3;           ///< cost of one intra-core SWAP
    int c_tele = 10;          ///< cost of one teleport (one EPR pair)
    int tau = 3;              ///< capacity threshold
    int c_pen = 15;           ///< capacity penalty multiplier
    int w_link = 10;          ///< inter-core link weight
    int w_h = 5;              ///< hop-gain weight
    double w_e = 0.25;        ///< extended-set weight
    int ext_cap = 20;         ///< extended-set capacity L
    double gamma = 0.9;       ///< lookahead decay, in (0, 1]
    int deadlock_limit = 50;  ///< stalled iterations before rollback
    int max_rollbacks = 50;   ///< rollback budget before abort
    int theta_d = 3;          ///< relief demand threshold
    int theta_f = 2;          ///< relief free-slot threshold
    double b_r = 10;          ///< relief bonus weight

    bool disable_lookahead = false;
    bool disable_capacity = false;
    bool disable_hop = false;
    bool disable_relief = false;
    bool topo_extended_set = false;

    [[nodiscard]] double effective_w_e() const {
        return disable_lookahead ? 0.0 : w_e;
    }
    [[nodiscard]] int effective_c_pen() const {
        return disable_capacity ? 0 : c_pen;
    }
    [[nodiscard]] int effective_w_h() const { return disable_hop ? 0 : w_h; }

    void validate() const {
        if (c_swap < 0 || c_tele < 0 || tau < 0 || c_pen < 0 || w_link <= 0 ||
            w_h < 0 || w_e < 0 || b_r < 0) {
            throw std::invalid_argument("costs and weights must be >= 0");
        }
        if (!(gamma > 0.0 && gamma <= 1.0)) {
            throw std::invalid_argument("gamma must be in (0, 1]");
        }
        if (ext_cap < 0) {
            throw std::invalid_argument("extended-set capacity must be >= 0");
        }
        if (deadlock_limit < 1 || max_rollbacks < 0) {
            throw std::invalid_argument("bad deadlock/rollback limits");
        }
    }

    [[nodiscard]] nlohmann::json to_json() const {
        return {{"c_swap", c_swap},
                {"c_tele", c_tele},
                {"tau", tau},
                {"c_pen", c_pen},
                {"w_link", w_link},
                {"w_h", w_h},
                {"w_e", w_e},
                {"ext_cap", ext_cap},
                {"gamma", gamma},
                {"deadlock_limit", deadlock_limit},
                {"max_rollbacks", max_rollbacks},
                {"theta_d", theta_d},
                {"theta_f", theta_f},
                {"b_r", b_r},
                {"disable_lookahead", disable_lookahead},
                {"disable_capacity", disable_capacity},
                {"disable_hop", disable_hop},
                {"disable_relief", disable_relief},
                {"topo_extended_set", topo_extended_set}};
    }

    static RouterParams from_json(const nlohmann::json& j) {
        RouterParams p;
        j.at("c_swap").get_to(p.c_swap);
        j.at("c_tele").get_to(p.c_tele);
        j.at("tau").get_to(p.tau);
        j.at("c_pen").get_to(p.c_pen);
        j.at("w_link").get_to(p.w_link);
        j.at("w_h").get_to(p.w_h);
        j.at("w_e").get_to(p.w_e);
        j.at("ext_cap").get_to(p.ext_cap);
        j.at("gamma").get_to(p.gamma);
        j.at("deadlock_limit").get_to(p.deadlock_limit);
        j.at("max_rollbacks").get_to(p.max_rollbacks);
        j.at("theta_d").get_to(p.theta_d);
        j.at("theta_f").get_to(p.theta_f);
        j.at("b_r").get_to(p.b_r);
        j.at("disable_lookahead").get_to(p.disable_lookahead);
        j.at("disable_capacity").get_to(p.disable_capacity);
        j.at("disable_hop").get_to(p.disable_hop);
        j.at("disable_relief").get_to(p.disable_relief);
        j.at("topo_extended_set").get_to(p.topo_extended_set);
        return p;
    }
};

}  // namespace dsabre
