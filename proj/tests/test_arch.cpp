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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include <dsabre/arch.hpp>
#include <dsabre/distance.hpp>

#include "test_helpers.hpp"

using namespace dsabre;

namespace {
int slot_at(int core, int m, int r, int c) { return core * m * m + r * m + c; }

std::set<std::pair<int, int>> link_set(const Architecture& a) {
    std::set<std::pair<int, int>> s;
    for (const auto& l : a.links()) s.insert({l.port_a, l.port_b});
    return s;
}
}  // namespace

TEST_CASE("b-grid 2x2 with 4x4 cores matches the published topology") {
    auto arch = build_grid_arch(GridFamily::B, 2, 2, 4);
    CHECK(arch.n_cores() == 4);
    CHECK(arch.n_slots() == 64);
    CHECK(arch.links().size() == 4);

    // Port coordinates (row, col) per core, as drawn.
    std::set<std::pair<int, int>> expected = {
        {slot_at(0, 4, 1, 3), slot_at(1, 4, 1, 0)},  // C0-C1, row 1
        {slot_at(0, 4, 3, 1), slot_at(2, 4, 0, 1)},  // C0-C2, col 1
        {slot_at(1, 4, 3, 2), slot_at(3, 4, 0, 2)},  // C1-C3, col 2
        {slot_at(2, 4, 2, 3), slot_at(3, 4, 2, 0)},  // C2-C3, row 2
    };
    CHECK(link_set(arch) == expected);
}

TEST_CASE("h-grid 2x3 with 4x4 cores matches the published topology") {
    auto arch = build_grid_arch(GridFamily::H, 2, 3, 4);
    CHECK(arch.n_cores() == 6);
    CHECK(arch.n_slots() == 96);
    CHECK(arch.links().size() == 7);

    std::set<std::pair<int, int>> expected = {
        {slot_at(0, 4, 1, 3), slot_at(1, 4, 1, 0)},  // C0-C1
        {slot_at(1, 4, 1, 3), slot_at(2, 4, 1, 0)},  // C1-C2
        {slot_at(0, 4, 3, 1), slot_at(3, 4, 0, 1)},  // C0-C3
        {slot_at(1, 4, 3, 2), slot_at(4, 4, 0, 1)},  // C1-C4 (offset ports)
        {slot_at(2, 4, 3, 2), slot_at(5, 4, 0, 2)},  // C2-C5
        {slot_at(3, 4, 2, 3), slot_at(4, 4, 2, 0)},  // C3-C4
        {slot_at(4, 4, 2, 3), slot_at(5, 4, 2, 0)},  // C4-C5
    };
    CHECK(link_set(arch) == expected);
}

TEST_CASE("single-core grid has no links") {
    auto arch = build_grid_arch(GridFamily::B, 1, 1, 4);
    CHECK(arch.n_cores() == 1);
    CHECK(arch.n_slots() == 16);
    CHECK(arch.links().empty());
}

TEST_CASE("bad architecture specs are rejected") {
    CHECK_THROWS_AS(arch_from_spec("xgrid:2x2:4x4"), std::invalid_argument);
    CHECK_THROWS_AS(arch_from_spec("bgrid:2x2"), std::invalid_argument);
    CHECK_THROWS_AS(arch_from_spec("bgrid:2x2:4x5"), std::invalid_argument);
    CHECK_NOTHROW(arch_from_spec("hgrid:2x3:4x4"));
}

TEST_CASE("hierarchical distances equal the flat dijkstra oracle") {
    for (const char* spec : {"bgrid:2x2:4x4", "hgrid:2x3:4x4"}) {
        auto arch = arch_from_spec(spec);
        auto tables = precompute_distances(arch);
        auto oracle = testing::flat_dijkstra(arch);
        for (int a = 0; a < arch.n_slots(); ++a) {
            for (int b = 0; b < arch.n_slots(); ++b) {
                REQUIRE(tables.phys(a, b) == oracle[a][b]);
            }
        }
    }
}

TEST_CASE("reference cross-core pair on the h-grid") {
    auto arch = arch_from_spec("hgrid:2x3:4x4");
    auto tables = precompute_distances(arch);
    const int p1 = slot_at(1, 4, 0, 2);  // core 1, (0,2)
    const int p2 = slot_at(5, 4, 1, 1);  // core 5, (1,1)
    CHECK(tables.phys(p1, p2) == 28);
    CHECK(tables.core_hops(1, 5) == 2);
    CHECK(tables.core_dist(1, 5) == 20);
}

TEST_CASE("adjacent same-core slots are at distance 1") {
    auto arch = arch_from_spec("bgrid:2x2:4x4");
    auto tables = precompute_distances(arch);
    CHECK(tables.phys(0, 1) == 1);
    CHECK(tables.intra(0, 1) == 1);
}

TEST_CASE("distance tables are symmetric metrics") {
    auto arch = arch_from_spec("hgrid:2x3:4x4");
    auto tables = precompute_distances(arch);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        int p = static_cast<int>(rng() % arch.n_slots());
        int q = static_cast<int>(rng() % arch.n_slots());
        int r = static_cast<int>(rng() % arch.n_slots());
        CHECK(tables.phys(p, p) == 0);
        CHECK(tables.phys(p, q) == tables.phys(q, p));
        CHECK(tables.phys(p, r) <= tables.phys(p, q) + tables.phys(q, r));
    }
}

TEST_CASE("every link port has an intra-core neighbour") {
    for (const char* spec : {"bgrid:2x2:4x4", "hgrid:2x3:4x4", "hgrid:2x3:5x5"}) {
        auto arch = arch_from_spec(spec);
        for (const auto& l : arch.links()) {
            CHECK_FALSE(arch.neighbours(l.port_a).empty());
            CHECK_FALSE(arch.neighbours(l.port_b).empty());
        }
    }
}

TEST_CASE("core path degenerate and reference cases") {
    auto arch = arch_from_spec("hgrid:2x3:4x4");
    auto tables = precompute_distances(arch);
    CHECK(tables.core_path(3, 3) == std::vector<int>{3});

    auto path = core_path(tables, 1, 5);
    REQUIRE(path.size() == 3);  // two hops
    CHECK(path.front() == 1);
    CHECK(path.back() == 5);
    CHECK((path[1] == 2 || path[1] == 4));
    // Canonical tie-break: predecessor with the lowest core index.
    CHECK(path[1] == 2);
}

TEST_CASE("core path lengths match a bfs oracle on 4x4 core grids") {
    for (GridFamily fam : {GridFamily::B, GridFamily::H}) {
        auto arch = build_grid_arch(fam, 4, 4, 2);
        auto tables = precompute_distances(arch);
        for (int src = 0; src < arch.n_cores(); ++src) {
            auto hops = testing::core_bfs_hops(arch, src);
            for (int dst = 0; dst < arch.n_cores(); ++dst) {
                auto path = tables.core_path(src, dst);
                REQUIRE(static_cast<int>(path.size()) - 1 == hops[dst]);
                CHECK(tables.core_hops(src, dst) == hops[dst]);
                // Consecutive path cores must actually be linked.
                for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                    bool linked = false;
                    for (auto [other, link] : arch.links_of_core(path[i])) {
                        linked |= other == path[i + 1];
                    }
                    CHECK(linked);
                }
            }
        }
    }
}

TEST_CASE("disconnected core graphs are reported with the core pair") {
    std::vector<CoreDesc> cores(2);
    cores[0].slots = {0, 1};
    cores[0].intra_edges = {{0, 1}};
    cores[1].slots = {2, 3};
    cores[1].intra_edges = {{2, 3}};
    Architecture arch(std::move(cores), {}, 10);
    CHECK_THROWS_WITH(precompute_distances(arch),
                      Catch::Matchers::ContainsSubstring("cores 0 and 1"));
}

TEST_CASE("architecture json dump carries slots, cores and links") {
    auto arch = arch_from_spec("bgrid:2x2:4x4");
    auto j = arch.to_json();
    CHECK(j["w_link"] == 10);
    CHECK(j["cores"].size() == 4);
    CHECK(j["links"].size() == 4);
    CHECK(j["cores"][0]["slots"].size() == 16);
}
