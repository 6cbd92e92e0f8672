#include <stop_token>

#include "doctest.h"
#include "gcrp/gcrp.hpp"
#include "gcrp/oracle.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

using namespace gcrp;
using namespace fixtures;

TEST_CASE("exact tsp examples") {
    auto k3 = unit_metric(3);
    CHECK(exact_tsp(iota_vertices(3), k3).opt_cost == 3);
    auto p = exact_tsp_path(iota_vertices(3), k3, 0, 1);
    CHECK(p.opt_cost == 2);
    CHECK(p.witness.vertices == std::vector<Vertex>{0, 2, 1});

    auto d = seeded_metric(5, 3);
    auto dp = exact_tsp(iota_vertices(5), d);
    CHECK(dp.opt_cost == exact_tsp_enumerate(iota_vertices(5), d).opt_cost);
    CHECK(dp.opt_cost == brute::tsp(iota_vertices(5), d));
    CHECK(dp.witness.cost == dp.opt_cost);
    CHECK(dp.nodes_explored > 0);
}

TEST_CASE("exact tsp paths in all end modes") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const std::size_t n = 2 + seed % 6;
        auto d = seeded_metric(n, seed + 100);
        auto vs = iota_vertices(n);
        const Vertex s = 0, t = static_cast<Vertex>(n - 1);
        CHECK(exact_tsp_path(vs, d, s, t).opt_cost == exact_tsp_path_enumerate(vs, d, s, t).opt_cost);
        CHECK(exact_tsp_path(vs, d, s, std::nullopt).opt_cost == brute::tsp_path(vs, d, s));
        CHECK(exact_tsp_path(vs, d, std::nullopt, t).opt_cost == brute::tsp_path(vs, d, t));
        auto free_path = exact_tsp_path(vs, d, std::nullopt, std::nullopt);
        CHECK(free_path.opt_cost == brute::tsp_path(vs, d));
        CHECK(free_path.witness.cost == free_path.opt_cost);
        auto half = exact_tsp_path(vs, d, std::nullopt, t);
        CHECK(half.witness.vertices.back() == t);
    }
}

TEST_CASE("exact tgpp respects required edges") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const std::size_t n = 3 + seed % 5;
        auto d = seeded_metric(n, seed + 200);
        Rng rng(seed);
        std::vector<Vertex> order = iota_vertices(n);
        rng.shuffle(order);
        std::vector<VertexPair> edges;
        std::vector<std::pair<Vertex, Vertex>> raw;
        for (std::size_t i = 1; i < n; ++i)
            if (rng.chance(0.4)) {
                edges.emplace_back(order[i - 1], order[i]);
                raw.emplace_back(order[i - 1], order[i]);
            }
        auto r = exact_tgpp(RequiredSets{iota_vertices(n), edges}, d, std::nullopt, std::nullopt);
        CHECK(r.opt_cost == brute::tgpp(iota_vertices(n), raw, d));
        for (auto e : edges) CHECK(walk_has_step(r.witness, e.u, e.v, false));
    }
}

TEST_CASE("exact gcrp examples") {
    auto k3 = make_instance(unit_metric(3), {{0, 1, 2}}, {0, 1, 2}, {});
    CHECK(exact_gcrp(k3).opt_cost == 3);

    auto d = seeded_metric(2, 7);
    auto singles = make_instance(d, {{0}, {1}}, {}, {{0, 1}});
    CHECK(exact_gcrp(singles).opt_cost == 2 * d(0, 1));

    auto bad = make_instance(unit_metric(4), {{0, 1, 2, 3}}, {}, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_THROWS_AS(exact_gcrp(bad), InfeasibleInstance);

    GeneratorParams big;
    big.n = 11;
    big.k = 3;
    CHECK_THROWS_AS(exact_gcrp(generate_random(big, 1)), OracleCapExceeded);
    OracleBudget wide;
    wide.gcrp_cap = 11;
    CHECK_NOTHROW(exact_gcrp(generate_random(big, 1), wide));
}

TEST_CASE("exact gcrp agrees with both enumerators") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        GeneratorParams p;
        p.n = 3 + static_cast<int>(seed % 5);
        p.k = 1 + static_cast<int>(seed % 3);
        p.frac_required_v = 0.2 * static_cast<double>(seed % 6);
        p.frac_required_e = 0.15 * static_cast<double>(seed % 4);
        p.endpoints = seed % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        auto inst = generate_random(p, seed + 900);
        auto dp = exact_gcrp(inst);
        CHECK(dp.opt_cost == exact_gcrp_enumerate(inst).opt_cost);
        CHECK(dp.opt_cost == brute::gcrp(inst));
        CHECK(dp.witness.cost == dp.opt_cost);
        CHECK(check_tour(inst, dp.witness).empty());
        CHECK(solve(inst).tour.cost >= dp.opt_cost);
    }
}

TEST_CASE("exact arc routing") {
    auto u = unit_metric(2);
    CHECK(exact_scp(make_arc_task({{0, 1}}, true, u), u).opt_cost == 2);
    CHECK(exact_scp(make_arc_task({{0, 1}, {1, 0}}, true, u), u).opt_cost == 2);
    CHECK(exact_rpp(make_arc_task({{0, 1}}, false, u), u).opt_cost == 2);

    auto d = seeded_metric(6, 13);
    std::vector<std::pair<Vertex, Vertex>> arcs{{0, 1}, {2, 3}, {4, 5}};
    auto r = exact_scp(make_arc_task(arcs, true, d), d);
    CHECK(r.opt_cost == brute::scp(arcs, d));
    CHECK(r.witness.cost == r.opt_cost);
    CHECK(exact_rpp(make_arc_task(arcs, false, d), d).opt_cost == brute::rpp(arcs, d));

    std::vector<std::pair<Vertex, Vertex>> seven(7, {0, 1});
    CHECK_THROWS_AS(exact_scp(make_arc_task(seven, true, d), d), OracleCapExceeded);
    CHECK_THROWS_AS(exact_scp(make_arc_task(arcs, false, d), d), InvalidArgument);
}

TEST_CASE("oracle cancellation") {
    std::stop_source src;
    src.request_stop();
    auto d = seeded_metric(10, 1);
    CHECK_THROWS_AS(exact_tsp(iota_vertices(10), d, {}, src.get_token()), OracleCancelled);
    CHECK_THROWS_AS(exact_tsp_enumerate(iota_vertices(8), d, {}, src.get_token()), OracleCancelled);
}
