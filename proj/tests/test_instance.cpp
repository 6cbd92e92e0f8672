#include <string>

#include "doctest.h"
#include "gcrp/instance.hpp"
#include "support/fixtures.hpp"

using namespace gcrp;
using fixtures::unit_metric;

namespace {

MetricInstance unit_instance(std::size_t n, std::vector<std::vector<Vertex>> clusters, std::vector<Vertex> rv,
                             std::vector<VertexPair> re, std::optional<std::vector<ClusterEnds>> ends = std::nullopt) {
    return make_instance(unit_metric(n), std::move(clusters), std::move(rv), std::move(re), std::move(ends));
}

const char* kSample = R"(gcrp v1
# two clusters on a unit triangle plus one vertex
n 4
k 2
dist
0 1 1 2
1 0 1 2
1 1 0 2
2 2 2 0
cluster 0 0 1 2
cluster 1 3
requiredV 1 3
requiredE 0 2
)";

}  // namespace

TEST_CASE("validate_metric examples") {
    auto ok = unit_instance(3, {{0, 1, 2}}, {}, {});
    CHECK(validate_metric(ok).empty());

    DistanceMatrix d(3);
    d.set(0, 1, 5);
    d.set(1, 2, 1);
    d.set(0, 2, 1);
    auto bad = make_instance(d, {{0, 1, 2}}, {}, {});
    auto v = validate_metric(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == MetricViolation::Kind::Triangle);
    CHECK(v[0].at == std::vector<Vertex>{0, 2, 1});

    DistanceMatrix a = unit_metric(3);
    a.at(1, 0) = 2;
    auto asym = validate_metric(make_instance(a, {{0, 1, 2}}, {}, {}));
    REQUIRE(!asym.empty());
    CHECK(asym[0].kind == MetricViolation::Kind::Asymmetric);
    CHECK(asym[0].at == std::vector<Vertex>{0, 1});
}

TEST_CASE("validate_metric structural problems") {
    auto overlap = unit_instance(3, {{0, 1}, {1, 2}}, {}, {});
    CHECK(validate_metric(overlap).front().kind == MetricViolation::Kind::Partition);
    auto outside = unit_instance(3, {{0, 1}, {2}}, {}, {}, std::vector<ClusterEnds>{{0, 2}, {2, 2}});
    CHECK(validate_metric(outside).front().kind == MetricViolation::Kind::EndpointOutsideCluster);
    auto zero = unit_metric(3);
    zero.set(0, 1, 0);
    CHECK(validate_metric(make_instance(zero, {{0, 1, 2}}, {}, {})).front().kind ==
          MetricViolation::Kind::NonPositive);
}

TEST_CASE("classify examples") {
    SUBCASE("cross edge not leaving through t and entering through s") {
        auto inst = unit_instance(4, {{0, 1}, {2, 3}}, {}, {{0, 2}}, std::vector<ClusterEnds>{{0, 1}, {2, 3}});
        auto v = classify(inst);
        CHECK(v.status == FeasibilityStatus::InfeasibleCrossEdge);
        REQUIRE(v.witness_edge);
        CHECK(*v.witness_edge == VertexPair(0, 2));
    }
    SUBCASE("nothing required") {
        auto v = classify(unit_instance(4, {{0, 1}, {2, 3}}, {}, {}));
        CHECK(v.feasible());
        CHECK(v.case_tag == CaseTag::UnspecifiedIntraOnly);
        CHECK(v.cross_edge_count == 0);
    }
    SUBCASE("degree three") {
        auto v = classify(unit_instance(4, {{0, 1, 2, 3}}, {}, {{0, 1}, {0, 2}, {0, 3}}));
        CHECK(v.status == FeasibilityStatus::InfeasibleDegree);
        REQUIRE(v.witness_vertex);
        CHECK(*v.witness_vertex == 0);
    }
    SUBCASE("valid (t, s) cross edge") {
        auto inst = unit_instance(4, {{0, 1}, {2, 3}}, {}, {{1, 2}}, std::vector<ClusterEnds>{{0, 1}, {2, 3}});
        auto v = classify(inst);
        CHECK(v.feasible());
        CHECK(v.case_tag == CaseTag::SpecifiedEnds);
        CHECK(v.cross_edge_count == 1);
    }
    SUBCASE("cross edges without ends") {
        auto v = classify(unit_instance(4, {{0, 1}, {2, 3}}, {}, {{1, 2}}));
        CHECK(v.feasible());
        CHECK(v.case_tag == CaseTag::UnspecifiedWithCrossEdges);
    }
    SUBCASE("required cycle") {
        auto v = classify(unit_instance(4, {{0, 1, 2, 3}}, {}, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(v.status == FeasibilityStatus::InfeasibleStructure);
    }
    SUBCASE("required path covering the whole content closes into a tour") {
        auto v = classify(unit_instance(3, {{0, 1, 2}}, {}, {{0, 1}, {1, 2}}));
        CHECK(v.feasible());
    }
    SUBCASE("three attachments to one cluster") {
        auto v = classify(unit_instance(6, {{0, 1, 2}, {3}, {4}, {5}}, {}, {{0, 3}, {1, 4}, {2, 5}}));
        CHECK_FALSE(v.feasible());
    }
    SUBCASE("start with an interior required edge") {
        auto inst = unit_instance(3, {{0, 1, 2}}, {}, {{0, 1}, {0, 2}}, std::vector<ClusterEnds>{{0, 2}});
        CHECK_FALSE(classify(inst).feasible());
    }
}

TEST_CASE("build_cluster_subgraphs examples") {
    // clusters {1,2,3}, {4,5}, {7}; vertices 0 and 6 in a fourth cluster
    auto inst = unit_instance(8, {{1, 2, 3}, {4, 5}, {7}, {0, 6}}, {2}, {{4, 5}});
    auto subs = build_cluster_subgraphs(inst);
    REQUIRE(subs.size() == 4);
    CHECK(subs[0].vertices == std::vector<Vertex>{2});
    CHECK(subs[1].vertices == std::vector<Vertex>{4, 5});
    CHECK(subs[1].edges == std::vector<VertexPair>{{4, 5}});
    CHECK(subs[2].vertices.empty());
    CHECK(subs[2].edges.empty());

    auto with_ends = unit_instance(8, {{1, 2, 3}, {4, 5}, {7}, {0, 6}}, {2}, {},
                                   std::vector<ClusterEnds>{{1, 3}, {4, 5}, {7, 7}, {0, 6}});
    CHECK(build_cluster_subgraphs(with_ends)[0].vertices == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("cluster chains follow cross edges") {
    auto inst = unit_instance(6, {{0, 1}, {2, 3}, {4, 5}}, {}, {{1, 2}, {3, 4}},
                              std::vector<ClusterEnds>{{0, 1}, {2, 3}, {4, 5}});
    auto chains = build_cluster_chains(inst, analyze_required(inst));
    REQUIRE(chains);
    REQUIRE(chains->size() == 1);
    CHECK((*chains)[0].clusters == std::vector<int>{0, 1, 2});
    CHECK((*chains)[0].links == std::vector<std::pair<Vertex, Vertex>>{{1, 2}, {3, 4}});
    CHECK_FALSE((*chains)[0].cyclic);
}

TEST_CASE("generator determinism and validity") {
    GeneratorParams p;
    p.n = 6;
    p.k = 2;
    CHECK(generate_random(p, 7) == generate_random(p, 7));
    CHECK(serialize_instance(generate_random(p, 7)) == serialize_instance(generate_random(p, 7)));

    GeneratorParams singles;
    singles.n = 3;
    singles.k = 3;
    singles.frac_required_e = 0;
    auto s = generate_random(singles, 1);
    CHECK(s.cluster_count() == 3);
    for (const auto& c : s.clusters) CHECK(c.size() == 1);
    CHECK(s.required_edges.empty());
    CHECK(classify(s).feasible());

    GeneratorParams nine;
    nine.n = 9;
    nine.k = 3;
    CHECK(validate_metric(generate_random(nine, 1)).empty());

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GeneratorParams q;
        q.n = 3 + static_cast<int>(seed % 8);
        q.k = 1 + static_cast<int>(seed % 3);
        q.frac_required_v = 0.25 * static_cast<double>(seed % 5);
        q.frac_required_e = 0.1 * static_cast<double>(seed % 4);
        q.endpoints = seed % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        auto inst = generate_random(q, seed);
        CHECK(inst.size() == static_cast<std::size_t>(q.n));
        CHECK(inst.cluster_count() == static_cast<std::size_t>(q.k));
        CHECK(validate_metric(inst).empty());
        CHECK(classify(inst).feasible());
        CHECK(inst.has_ends() == (q.endpoints == EndpointsMode::Given));
    }
}

TEST_CASE("generator cross policies") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GeneratorParams p;
        p.n = 8;
        p.k = 3;
        p.frac_required_e = 0.3;
        p.cross = CrossPolicy::None;
        CHECK(classify(generate_random(p, seed)).case_tag == CaseTag::UnspecifiedIntraOnly);
        p.cross = CrossPolicy::AtLeastOne;
        CHECK(classify(generate_random(p, seed)).case_tag == CaseTag::UnspecifiedWithCrossEdges);
    }
    GeneratorParams one;
    one.n = 5;
    one.k = 1;
    one.cross = CrossPolicy::AtLeastOne;
    CHECK_THROWS_AS(generate_random(one, 0), GenerationError);
}

TEST_CASE("text format round trip") {
    GeneratorParams p;
    p.n = 6;
    p.k = 2;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        p.endpoints = seed % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        auto inst = generate_random(p, seed);
        auto text = serialize_instance(inst);
        CHECK(parse_instance(text) == inst);
        CHECK(serialize_instance(parse_instance(text)) == text);
    }
    auto sample = parse_instance(kSample);
    CHECK(sample.size() == 4);
    CHECK(sample.clusters[0] == std::vector<Vertex>{0, 1, 2});
    CHECK(sample.required_edges == std::vector<VertexPair>{{0, 2}});
    CHECK_FALSE(sample.has_ends());
}

TEST_CASE("parse errors") {
    auto kind_of = [](const std::string& text) {
        try {
            parse_instance(text);
        } catch (const ParseError& e) {
            return e.kind();
        }
        FAIL("no parse error for: " << text);
        return ParseError::Kind::Malformed;
    };
    const std::string body = "n 2\nk 1\ndist\n0 3\n3 0\n";
    CHECK(kind_of("gcrp v2\n" + body + "cluster 0 0 1\n") == ParseError::Kind::Header);
    CHECK(kind_of("gcrp v1\n" + body + "cluster 0 0 1\ncluster 0 1\n") == ParseError::Kind::Partition);
    CHECK(kind_of("gcrp v1\nn 2\nk 2\ndist\n0 3\n3 0\ncluster 0 0 1\ncluster 1 1\n") == ParseError::Kind::Partition);
    CHECK(kind_of("gcrp v1\nn 3\nk 1\ndist\n0 3 1\n3 0 1\ncluster 0 0 1 2\n") == ParseError::Kind::Dimension);
    CHECK(kind_of("gcrp v1\n" + body + "cluster 0 0 5\n") == ParseError::Kind::Range);
    CHECK(kind_of("gcrp v1\n" + body + "cluster 0 0 x\n") == ParseError::Kind::Malformed);
    CHECK(kind_of("gcrp v1\nn 2\nk 1\ncluster 0 0 1\n") == ParseError::Kind::Missing);
    CHECK(kind_of("gcrp v1\nn 2\nk 2\ndist\n0 3\n3 0\ncluster 0 0\ncluster 1 1\nends 0 0 0\n") ==
          ParseError::Kind::Endpoint);
    CHECK(kind_of("gcrp v1\nn 2\nk 2\ndist\n0 3\n3 0\ncluster 0 0\ncluster 1 1\nends 0 1 1\nends 1 1 1\n") ==
          ParseError::Kind::Endpoint);

    try {
        parse_instance("gcrp v1\n" + body + "cluster 0 0 1\nbogus 1\n");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 8);
    }
}
