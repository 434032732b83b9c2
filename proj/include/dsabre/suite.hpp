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
 * @file suite.hpp
 * @brief Batch harness: per-seed routing runs, geometric-mean summaries,
 *        cost sweeps and the mechanism-ablation matrix.
 *
 * One record per (circuit, seed). Each seed runs its own layout pipeline
 * (one trial) and a final forward routing pass, reproducing the best-of-N
 * seed protocol; the per-circuit best EPR over completed seeds feeds the
 * suite geometric mean. Records embed the params echo and the initial
 * layout, so any run can be reproduced bit-exactly from its JSON.
 */

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qasm.hpp"
#include "sabre_layout.hpp"
#include "verify.hpp"

namespace dsabre {

struct CircuitSpec {
    std::string name;
    std::vector<Gate> gates;
    int n_logical = 0;
};

/// Parses `ghz:N`, `qft:N`, `graphstate:N`, `random:N:CX[:SEED]`.
inline CircuitSpec circuit_from_string(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    auto fail = [&] {
        throw std::invalid_argument("bad circuit spec '" + spec +
                                    "' (expected e.g. qft:64 or "
                                    "random:25:600:7)");
    };
    if (parts.size() < 2) fail();
    int n = 0;
    try {
        n = std::stoi(parts[1]);
    } catch (const std::exception&) {
        fail();
    }
    CircuitSpec out;
    out.name = spec;
    out.n_logical = n;
    if (parts[0] == "ghz" && parts.size() == 2) {
        out.gates = gen_ghz(n);
    } else if (parts[0] == "qft" && parts.size() == 2) {
        out.gates = gen_qft(n);
    } else if (parts[0] == "graphstate" && parts.size() == 2) {
        out.gates = gen_graphstate(n);
    } else if (parts[0] == "random" &&
               (parts.size() == 3 || parts.size() == 4)) {
        try {
            const int cx = std::stoi(parts[2]);
            const std::uint64_t seed =
                parts.size() == 4 ? std::stoull(parts[3]) : 1;
            out.gates = gen_random(n, cx, seed);
        } catch (const std::invalid_argument&) {
            fail();
        }
    } else {
        fail();
    }
    return out;
}

inline CircuitSpec circuit_from_qasm_file(const std::string& path,
                                          const std::string& text) {
    auto parsed = parse_qasm(text);
    return {path, std::move(parsed.gates), parsed.n_logical};
}

struct PhaseTiming {
    double layout_ms = 0.0;
    double route_ms = 0.0;
    double total_ms = 0.0;
};

struct RunRecord {
    std::string circuit;
    std::string arch_spec;
    std::uint64_t seed = 0;
    RouterParams params;
    bool corner_removal = true;
    int layout_trials = 1;
    int n_logical = 0;
    int cx_count = 0;
    std::vector<SlotId> initial_layout;
    Metrics metrics;
    RouteStatus status = RouteStatus::complete;
    PhaseTiming timing;
    std::string program_dump;  ///< kept only when requested

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j;
        j["circuit"] = circuit;
        j["arch"] = arch_spec;
        j["seed"] = seed;
        j["params"] = params.to_json();
        j["corner_removal"] = corner_removal;
        j["layout_trials"] = layout_trials;
        j["n_logical"] = n_logical;
        j["cx_count"] = cx_count;
        j["initial_layout"] = initial_layout;
        j["status"] = status == RouteStatus::complete ? "complete" : "aborted";
        j["metrics"] = {{"epr", metrics.epr},
                        {"swaps", metrics.swaps},
                        {"cost", metrics.cost},
                        {"rollbacks", metrics.rollbacks},
                        {"relief_moves", metrics.relief_moves},
                        {"runtime_ms", metrics.runtime_ms},
                        {"iterations", metrics.iterations},
                        {"flagged_iterations", metrics.flagged_iterations},
                        {"max_scored_candidates",
                         metrics.max_scored_candidates}};
        j["timing"] = {{"layout_ms", timing.layout_ms},
                       {"route_ms", timing.route_ms},
                       {"total_ms", timing.total_ms}};
        return j;
    }

    static RunRecord from_json(const nlohmann::json& j) {
        RunRecord r;
        j.at("circuit").get_to(r.circuit);
        j.at("arch").get_to(r.arch_spec);
        j.at("seed").get_to(r.seed);
        r.params = RouterParams::from_json(j.at("params"));
        j.at("corner_removal").get_to(r.corner_removal);
        j.at("layout_trials").get_to(r.layout_trials);
        j.at("n_logical").get_to(r.n_logical);
        j.at("cx_count").get_to(r.cx_count);
        j.at("initial_layout").get_to(r.initial_layout);
        r.status = j.at("status") == "complete" ? RouteStatus::complete
                                                : RouteStatus::aborted;
        const auto& m = j.at("metrics");
        m.at("epr").get_to(r.metrics.epr);
        m.at("swaps").get_to(r.metrics.swaps);
        m.at("cost").get_to(r.metrics.cost);
        m.at("rollbacks").get_to(r.metrics.rollbacks);
        m.at("relief_moves").get_to(r.metrics.relief_moves);
        m.at("runtime_ms").get_to(r.metrics.runtime_ms);
        m.at("iterations").get_to(r.metrics.iterations);
        m.at("flagged_iterations").get_to(r.metrics.flagged_iterations);
        m.at("max_scored_candidates").get_to(r.metrics.max_scored_candidates);
        const auto& t = j.at("timing");
        t.at("layout_ms").get_to(r.timing.layout_ms);
        t.at("route_ms").get_to(r.timing.route_ms);
        t.at("total_ms").get_to(r.timing.total_ms);
        return r;
    }
};

/// Geometric mean with zeros replaced by 1 (flagged via zero_substituted).
inline double gmean(const std::vector<double>& values,
                    bool* zero_substituted = nullptr) {
    if (values.empty()) return 0.0;
    double log_sum = 0.0;
    bool subst = false;
    for (double v : values) {
        if (v <= 0.0) {
            subst = true;
            v = 1.0;
        }
        log_sum += std::log(v);
    }
    if (zero_substituted != nullptr) *zero_substituted = subst;
    return std::exp(log_sum / static_cast<double>(values.size()));
}

struct CircuitSummary {
    std::string circuit;
    int best_epr = -1;  ///< -1 when no seed converged
    std::uint64_t best_seed = 0;
    int best_swaps = 0;
    long long best_cost = 0;
    bool non_convergent = false;
};

struct SuiteResult {
    std::vector<RunRecord> records;
    std::vector<CircuitSummary> per_circuit;
    double gmean_epr = 0.0;
    double gmean_swaps = 0.0;
    double gmean_cost = 0.0;
    bool zero_substituted = false;

    [[nodiscard]] nlohmann::json records_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : records) j.push_back(r.to_json());
        return j;
    }
};

struct SuiteOptions {
    int seeds = 3;
    std::uint64_t base_seed = 1;
    int layout_trials = 1;
    bool corner_removal = true;
    int threads = 1;
    bool keep_programs = false;
    std::optional<std::vector<SlotId>> injected_layout;
};

namespace detail {

inline RunRecord run_one(const CircuitSpec& circuit, const Architecture& arch,
                         const DistanceTables& tables,
                         const RouterParams& params, std::uint64_t seed,
                         const SuiteOptions& opt) {
    using Clock = std::chrono::steady_clock;
    RunRecord rec;
    rec.circuit = circuit.name;
    rec.arch_spec = arch.spec_string();
    rec.seed = seed;
    rec.params = params;
    rec.corner_removal = opt.corner_removal;
    rec.layout_trials = opt.layout_trials;
    rec.n_logical = circuit.n_logical;
    rec.cx_count = count_two_q(circuit.gates);

    const auto dag = build_dag(circuit.gates, circuit.n_logical);
    const auto t0 = Clock::now();
    Layout layout =
        opt.injected_layout
            ? Layout(arch, *opt.injected_layout)
            : initial_layout(dag, arch, tables, params, seed,
                             opt.layout_trials, opt.corner_removal);
    const auto t1 = Clock::now();
    auto result = route(dag, layout, arch, tables, params);
    const auto t2 = Clock::now();

    rec.initial_layout = layout.assignments();
    rec.metrics = result.metrics;
    rec.status = result.status;
    rec.timing.layout_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.timing.route_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
    rec.timing.total_ms =
        std::chrono::duration<double, std::milli>(t2 - t0).count();
    rec.metrics.runtime_ms = rec.timing.route_ms;
    if (opt.keep_programs) rec.program_dump = result.program.dump(dag);
    return rec;
}

}  // namespace detail

inline SuiteResult run_suite(const std::vector<CircuitSpec>& circuits,
                             const Architecture& arch,
                             const DistanceTables& tables,
                             const RouterParams& params,
                             const SuiteOptions& opt = {}) {
    SuiteResult out;
    struct Job {
        const CircuitSpec* circuit;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& c : circuits) {
        for (int s = 0; s < opt.seeds; ++s) {
            jobs.push_back({&c, opt.base_seed + static_cast<std::uint64_t>(s)});
        }
    }
    out.records.resize(jobs.size());
    if (opt.threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            out.records[i] = detail::run_one(*jobs[i].circuit, arch, tables,
                                             params, jobs[i].seed, opt);
        }
    } else {
        // Results land by index, so the output order is independent of the
        // execution order.
        std::vector<std::future<RunRecord>> futures(jobs.size());
        std::size_t next = 0;
        while (next < jobs.size()) {
            const std::size_t batch = std::min<std::size_t>(
                opt.threads, jobs.size() - next);
            for (std::size_t k = 0; k < batch; ++k) {
                const Job& job = jobs[next + k];
                futures[next + k] = std::async(
                    std::launch::async, [&, job] {
                        return detail::run_one(*job.circuit, arch, tables,
                                               params, job.seed, opt);
                    });
            }
            for (std::size_t k = 0; k < batch; ++k) {
                out.records[next + k] = futures[next + k].get();
            }
            next += batch;
        }
    }

    std::vector<double> eprs;
    std::vector<double> swaps;
    std::vector<double> costs;
    for (const auto& c : circuits) {
        CircuitSummary summary;
        summary.circuit = c.name;
        for (const auto& r : out.records) {
            if (r.circuit != c.name || r.status != RouteStatus::complete) {
                continue;
            }
            if (summary.best_epr < 0 || r.metrics.epr < summary.best_epr) {
                summary.best_epr = r.metrics.epr;
                summary.best_seed = r.seed;
                summary.best_swaps = r.metrics.swaps;
                summary.best_cost = r.metrics.cost;
            }
        }
        summary.non_convergent = summary.best_epr < 0;
        if (!summary.non_convergent) {
            eprs.push_back(summary.best_epr);
            swaps.push_back(summary.best_swaps);
            costs.push_back(static_cast<double>(summary.best_cost));
        }
        out.per_circuit.push_back(std::move(summary));
    }
    bool subst = false;
    out.gmean_epr = gmean(eprs, &subst);
    out.zero_substituted = subst;
    out.gmean_swaps = gmean(swaps);
    out.gmean_cost = gmean(costs);
    return out;
}

// ---- cost sweep ----------------------------------------------------------

struct CostSweepRow {
    int c_tele;
    double gmean_cost;
};

/// Recomputes cost per sweep point from stored counts; no re-routing.
inline std::vector<CostSweepRow> cost_sweep(
    const std::vector<RunRecord>& records,
    const std::vector<int>& c_tele_values = {10, 20, 50, 100}) {
    std::vector<CostSweepRow> table;
    for (int c_tele : c_tele_values) {
        std::vector<double> costs;
        for (const auto& r : records) {
            if (r.status != RouteStatus::complete) continue;
            costs.push_back(static_cast<double>(
                static_cast<long long>(r.params.c_swap) * r.metrics.swaps +
                static_cast<long long>(c_tele) * r.metrics.epr));
        }
        table.push_back({c_tele, gmean(costs)});
    }
    return table;
}

// ---- mechanism ablation ----------------------------------------------------

struct AblationRow {
    std::string name;
    double gmean_epr = 0.0;
    double gmean_swaps = 0.0;
    double delta_pct = 0.0;  ///< vs the full configuration
    int non_convergent = 0;
    SuiteResult suite;
};

/// The five mechanism configurations plus the topological extended set.
inline std::vector<AblationRow> ablate(const std::vector<CircuitSpec>& circuits,
                                       const Architecture& arch,
                                       const DistanceTables& tables,
                                       const RouterParams& base,
                                       const SuiteOptions& opt = {}) {
    struct Config {
        const char* name;
        void (*tweak)(RouterParams&);
    };
    static const Config kConfigs[] = {
        {"full", [](RouterParams&) {}},
        {"no-lookahead (w_e=0)",
         [](RouterParams& p) { p.disable_lookahead = true; }},
        {"no-capacity (c_pen=0)",
         [](RouterParams& p) { p.disable_capacity = true; }},
        {"no-hop (w_h=0)", [](RouterParams& p) { p.disable_hop = true; }},
        {"no-relief", [](RouterParams& p) { p.disable_relief = true; }},
        {"topo-extset", [](RouterParams& p) { p.topo_extended_set = true; }},
    };
    std::vector<AblationRow> rows;
    for (const auto& cfg : kConfigs) {
        RouterParams params = base;
        cfg.tweak(params);
        AblationRow row;
        row.name = cfg.name;
        row.suite = run_suite(circuits, arch, tables, params, opt);
        row.gmean_epr = row.suite.gmean_epr;
        row.gmean_swaps = row.suite.gmean_swaps;
        for (const auto& s : row.suite.per_circuit) {
            row.non_convergent += s.non_convergent;
        }
        rows.push_back(std::move(row));
    }
    const double full = rows.front().gmean_epr;
    for (auto& row : rows) {
        row.delta_pct = full > 0.0 ? (row.gmean_epr / full - 1.0) * 100.0 : 0.0;
    }
    return rows;
}

}  // namespace dsabre
