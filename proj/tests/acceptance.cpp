// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails. The first argument, when given, is the path of
// the gcrp command-line tool, used for the exit code checks.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gcrp/bench.hpp"
#include "gcrp/gcrp.hpp"
#include "gcrp/graphkit.hpp"
#include "gcrp/oracle.hpp"
#include "gcrp/pathsolver.hpp"
#include "support/brute.hpp"
#include "support/fixtures.hpp"

using namespace gcrp;
using namespace fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures with the first few messages.
struct Tally {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 5) notes.push_back(what);
    }
    Outcome outcome(const std::string& summary) const {
        Outcome o;
        o.pass = failures == 0;
        o.detail = summary + ", " + std::to_string(failures) + " failures";
        for (const auto& n : notes) o.detail += "\n    " + n;
        return o;
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

double ratio(Cost cost, Cost opt) { return opt > 0 ? static_cast<double>(cost) / static_cast<double>(opt) : 1.0; }

// Feasible instances from consecutive seeds; seeds the generator gives up on
// are skipped.
std::vector<std::pair<std::uint64_t, MetricInstance>> instances(std::size_t count, std::uint64_t salt,
                                                                 const std::function<GeneratorParams(std::uint64_t)>& make) {
    std::vector<std::pair<std::uint64_t, MetricInstance>> out;
    for (std::uint64_t seed = 0; out.size() < count && seed < 20 * count; ++seed) {
        try {
            out.emplace_back(seed, generate_random(make(seed), mix_seed(seed, salt)));
        } catch (const GenerationError&) {
        }
    }
    return out;
}

std::string label(std::uint64_t seed, const MetricInstance& inst) {
    return "seed " + std::to_string(seed) + " n=" + std::to_string(inst.size()) + " k=" +
           std::to_string(inst.cluster_count());
}

// ---------------------------------------------------------------------------

Outcome validity_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    auto suite = instances(600, 1, [](std::uint64_t s) {
        GeneratorParams p;
        p.n = 4 + static_cast<int>(s % 7);
        p.k = 1 + static_cast<int>((s / 7) % 4);
        p.frac_required_v = 0.2 * static_cast<double>(1 + s % 5);
        p.frac_required_e = 0.1 * static_cast<double>((s / 3) % 4);
        p.endpoints = (s / 2) % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        p.cross = CrossPolicy::Any;
        return p;
    });
    Tally tally;
    int given = 0;
    for (const auto& [seed, inst] : suite) {
        given += inst.has_ends();
        GcrpSolution sol = solve(inst);
        auto problems = check_tour(inst, sol.tour);
        tally.expect(problems.empty(), label(seed, inst) + ": " + (problems.empty() ? "" : problems.front()));
        tally.expect(brute::valid_tour(inst, sol.tour.vertices), label(seed, inst) + ": independent check failed");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tally.expect(suite.size() >= 500, "only " + std::to_string(suite.size()) + " instances");
    tally.expect(secs < 120, "took " + fmt(secs) + " s");
    return tally.outcome(std::to_string(suite.size()) + " instances (" + std::to_string(given) +
                         " with ends), " + fmt(secs) + " s");
}

Outcome ratio_suite(EndpointsMode ends, CrossPolicy cross, int min_k, Ratio ceiling, std::uint64_t salt,
                    bool ledger, const char* name) {
    auto suite = instances(250, salt, [&](std::uint64_t s) {
        GeneratorParams p;
        p.n = 4 + static_cast<int>(s % 6);
        p.k = std::min(p.n, min_k + static_cast<int>((s / 6) % (5 - min_k)));
        p.frac_required_v = 0.2 * static_cast<double>(1 + s % 5);
        p.frac_required_e = 0.1 * static_cast<double>((s / 2) % 4);
        p.endpoints = ends;
        p.cross = cross;
        return p;
    });
    Tally tally;
    double worst = 0;
    int t2_wins = 0;
    for (const auto& [seed, inst] : suite) {
        const GcrpSolution sol = solve(inst);
        const OracleResult opt = exact_gcrp(inst);
        const Ratio c = sol.algorithm == Algorithm::TsppCase ? ceiling_for(Algorithm::TsppCase) : ceiling;
        worst = std::max(worst, ratio(sol.tour.cost, opt.opt_cost));
        tally.expect(check_tour(inst, sol.tour).empty(), label(seed, inst) + ": invalid tour");
        tally.expect(sol.tour.cost >= opt.opt_cost, label(seed, inst) + ": below the optimum");
        tally.expect(within(sol.tour.cost, c, opt.opt_cost),
                     label(seed, inst) + ": ratio " + fmt(ratio(sol.tour.cost, opt.opt_cost)));
        if (!ledger) continue;
        t2_wins += sol.algorithm == Algorithm::Alg3T2;
        std::optional<Cost> t1, t2;
        for (auto [tag, cost] : sol.candidates) {
            if (tag == Algorithm::Alg3T1) t1 = cost;
            if (tag == Algorithm::Alg3T2) t2 = cost;
        }
        const BoundsLedger lg = ledger_from_reference(inst, opt.witness);
        tally.expect(t1 && t2 && sol.ledger.D, label(seed, inst) + ": missing candidates");
        if (!(t1 && t2 && sol.ledger.D)) continue;
        const Cost L = *lg.L, D = *sol.ledger.D, o = opt.opt_cost;
        tally.expect(2 * *t1 <= 3 * o + L + 4 * D, label(seed, inst) + ": T1 ledger bound");
        tally.expect(2 * *t2 <= 3 * o + 6 * L - 4 * D, label(seed, inst) + ": T2 ledger bound");
    }
    tally.expect(suite.size() >= 200, "only " + std::to_string(suite.size()) + " instances");
    std::string summary = std::string(name) + ": " + std::to_string(suite.size()) + " instances, max ratio " + fmt(worst);
    if (ledger) summary += ", T2 chosen " + std::to_string(t2_wins) + " times";
    return tally.outcome(summary);
}

// Clusters joined by a ring of cross edges, two attachment vertices each.
MetricInstance ring_instance(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 44));
    const std::size_t n = 4 + rng.below(6);
    const std::size_t k = 2 + rng.below(std::min<std::size_t>(3, n / 2 - 1));
    auto d = seeded_metric(n, mix_seed(seed, 45));
    std::vector<Vertex> order = iota_vertices(n);
    rng.shuffle(order);
    std::vector<std::vector<Vertex>> clusters(k);
    for (std::size_t i = 0; i < n; ++i) clusters[i < 2 * k ? i / 2 : rng.below(k)].push_back(order[i]);
    std::vector<VertexPair> edges;
    for (std::size_t i = 0; i < k; ++i) edges.emplace_back(order[2 * i + 1], order[(2 * i + 2) % (2 * k)]);
    std::vector<Vertex> rv;
    for (std::size_t i = 0; i < n; ++i)
        if (rng.chance(0.5)) rv.push_back(static_cast<Vertex>(i));
    return make_instance(d, clusters, rv, edges);
}

Outcome cross_edge_suite() {
    Outcome main = ratio_suite(EndpointsMode::Free, CrossPolicy::AtLeastOne, 2, {9, 4}, 4, false, "cross-edge");
    Tally tally;
    double worst = 0;
    int count = 0;
    for (std::uint64_t seed = 0; count < 120; ++seed) {
        MetricInstance inst = ring_instance(seed);
        if (!classify(inst).feasible()) continue;
        ++count;
        const GcrpSolution sol = solve(inst);
        const Cost opt = exact_gcrp(inst).opt_cost;
        worst = std::max(worst, ratio(sol.tour.cost, opt));
        tally.expect(sol.algorithm == Algorithm::TsppCase, label(seed, inst) + ": not handled as one cycle");
        tally.expect(check_tour(inst, sol.tour).empty(), label(seed, inst) + ": invalid tour");
        tally.expect(within(sol.tour.cost, {3, 2}, opt), label(seed, inst) + ": ratio " + fmt(ratio(sol.tour.cost, opt)));
    }
    Outcome ring = tally.outcome("single-cycle sub-suite: " + std::to_string(count) + " instances, max ratio " +
                                 fmt(worst));
    return {main.pass && ring.pass, main.detail + "; " + ring.detail};
}

// Random disjoint required paths over 0..n-1.
std::vector<VertexPair> random_paths(std::size_t n, Rng& rng, double p) {
    std::vector<Vertex> order = iota_vertices(n);
    rng.shuffle(order);
    std::vector<VertexPair> edges;
    for (std::size_t i = 1; i < n; ++i)
        if (rng.chance(p)) edges.emplace_back(order[i - 1], order[i]);
    return edges;
}

std::vector<std::pair<Vertex, Vertex>> random_arcs(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<std::pair<Vertex, Vertex>> out;
    while (out.size() < m) {
        Vertex a = static_cast<Vertex>(rng.below(n)), b = static_cast<Vertex>(rng.below(n));
        if (a != b) out.emplace_back(a, b);
    }
    return out;
}

Outcome subroutine_bounds() {
    Tally tally;
    const int seeds = 120;
    for (int seed = 0; seed < seeds; ++seed) {
        const std::string tag = "seed " + std::to_string(seed);
        Rng rng(mix_seed(seed, 5));
        {
            const std::size_t n = 3 + seed % 8;
            auto d = seeded_metric(n, mix_seed(seed, 51));
            auto vs = iota_vertices(n);
            const Cost opt = exact_tsp(vs, d).opt_cost;
            tally.expect(2 * christofides(vs, d).cost <= 3 * opt, tag + ": christofides above 3/2");
        }
        {
            const std::size_t n = 3 + seed % 8;
            auto d = seeded_metric(n, mix_seed(seed, 52));
            auto vs = iota_vertices(n);
            const Vertex s = 0, t = static_cast<Vertex>(1 + rng.below(n - 1));
            auto pp = hoogeveen_fixed_ends(vs, d, s, t);
            const Cost opt = exact_tsp_path(vs, d, s, t).opt_cost;
            tally.expect(3 * pp.chosen.cost <= 5 * opt, tag + ": fixed-ends path above 5/3");
        }
        {
            const std::size_t n = 3 + seed % 5;
            auto d = seeded_metric(n, mix_seed(seed, 53));
            auto vs = iota_vertices(n);
            const Vertex s = static_cast<Vertex>(rng.below(n)), t = static_cast<Vertex>((s + 1) % n);
            auto pp = hoogeveen_fixed_ends(vs, d, s, t);
            tally.expect(pp.s1.cost <= 2 * brute::min_spanning_tree(vs, d) - d(s, t), tag + ": S1 above 2 MST - d(s,t)");
        }
        {
            const std::size_t n = 3 + seed % 7;
            auto d = seeded_metric(n, mix_seed(seed, 54));
            auto edges = random_paths(n, rng, 0.35);
            RequiredSets req{iota_vertices(n), edges};
            std::vector<int> deg(n, 0);
            for (auto e : edges) deg[e.u] += 1, deg[e.v] += 1;
            std::vector<Vertex> ends;
            for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
                if (deg[v] <= 1) ends.push_back(v);
            const Cost free_opt = exact_tgpp(req, d, std::nullopt, std::nullopt).opt_cost;
            tally.expect(tgpp_path(req, d, std::nullopt, std::nullopt).cost <= 2 * free_opt, tag + ": free tgpp above 2");
            const Vertex s = ends.front(), t = ends.back();
            bool same_path = false;
            for (auto e : edges) same_path = same_path || (e.contains(s) && e.contains(t));
            if (s != t && !(same_path && edges.size() + 1 < n)) {
                try {
                    const Cost opt = exact_tgpp(req, d, s, t).opt_cost;
                    tally.expect(tgpp_path(req, d, s, t).cost <= 2 * opt, tag + ": s-t tgpp above 2");
                } catch (const InvalidArgument&) {
                    // s and t end the same required path: no s-t path through everything
                }
            }
        }
        {
            const std::size_t n = 4 + seed % 6;
            auto d = seeded_metric(n, mix_seed(seed, 55));
            auto task = make_arc_task(random_arcs(n, 1 + seed % 6, rng), false, d);
            tally.expect(2 * rpp_solve(task, d).walk.cost <= 3 * exact_rpp(task, d).opt_cost, tag + ": rpp above 3/2");
        }
        {
            const std::size_t n = 4 + seed % 6;
            auto d = seeded_metric(n, mix_seed(seed, 56));
            auto task = make_arc_task(random_arcs(n, 1 + seed % 6, rng), true, d);
            const Cost D = task.total_length(), A = exact_scp(task, d).opt_cost - D;
            tally.expect(2 * scp_short_arcs(task, d).walk.cost <= 3 * A + 4 * D, tag + ": short-arcs above 3/2 A + 2D");
            tally.expect(scp_long_arcs(task, d).walk.cost <= 3 * A + D, tag + ": long-arcs above 3A + D");
        }
    }
    return tally.outcome(std::to_string(seeds) + " seeds per subroutine");
}

Outcome oracle_cross_validation() {
    Tally tally;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 6;
        auto d = seeded_metric(n, mix_seed(seed, 6));
        auto vs = iota_vertices(n);
        tally.expect(exact_tsp(vs, d).opt_cost == exact_tsp_enumerate(vs, d).opt_cost,
                     "tsp seed " + std::to_string(seed));
        const Vertex t = static_cast<Vertex>(n - 1);
        tally.expect(exact_tsp_path(vs, d, 0, t).opt_cost == exact_tsp_path_enumerate(vs, d, 0, t).opt_cost,
                     "tsp path seed " + std::to_string(seed));
        tally.expect(exact_tsp_path(vs, d, std::nullopt, std::nullopt).opt_cost ==
                         exact_tsp_path_enumerate(vs, d, std::nullopt, std::nullopt).opt_cost,
                     "free tsp path seed " + std::to_string(seed));
    }
    auto suite = instances(60, 7, [](std::uint64_t s) {
        GeneratorParams p;
        p.n = 3 + static_cast<int>(s % 5);
        p.k = 1 + static_cast<int>((s / 5) % 3);
        p.frac_required_v = 0.25 * static_cast<double>(1 + s % 4);
        p.frac_required_e = 0.15 * static_cast<double>((s / 2) % 4);
        p.endpoints = s % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        return p;
    });
    for (const auto& [seed, inst] : suite) {
        const OracleResult dp = exact_gcrp(inst);
        tally.expect(dp.opt_cost == exact_gcrp_enumerate(inst).opt_cost, label(seed, inst) + ": dp vs filter");
        tally.expect(dp.opt_cost == brute::gcrp(inst), label(seed, inst) + ": dp vs test enumerator");
        tally.expect(brute::valid_tour(inst, dp.witness.vertices), label(seed, inst) + ": witness invalid");
    }
    return tally.outcome("100 TSP seeds, " + std::to_string(suite.size()) + " GCRP instances");
}

Outcome primitives() {
    Tally tally;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 * (1 + seed % 4);
        auto d = seeded_metric(n, mix_seed(seed, 71));
        auto vs = iota_vertices(n);
        tally.expect(min_weight_perfect_matching(vs, d).cost == brute::min_perfect_matching(vs, d),
                     "matching seed " + std::to_string(seed));
        const std::size_t m = 1 + seed % 6;
        auto dm = seeded_metric(m, mix_seed(seed, 72));
        auto ms = iota_vertices(m);
        tally.expect(minimum_spanning_tree(ms, dm).cost == brute::min_spanning_tree(ms, dm),
                     "mst seed " + std::to_string(seed));

        // Euler trails over random connected multigraphs with even degrees
        Rng rng(mix_seed(seed, 73));
        const std::size_t gn = 2 + seed % 7;
        Multigraph g{iota_vertices(gn), {}};
        for (std::size_t i = 0; i < gn; ++i) {
            Vertex a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % gn);
            g.edges.push_back({a, b, 1});
        }
        for (int extra = 0; extra < 3; ++extra) {
            Vertex a = static_cast<Vertex>(rng.below(gn)), b = static_cast<Vertex>(rng.below(gn));
            g.edges.push_back({a, b, 1});
            g.edges.push_back({b, a, 1});
        }
        auto trail = eulerian_walk(g, 0, 0);
        auto idx = trail.edges;
        std::sort(idx.begin(), idx.end());
        bool exact = idx.size() == g.edges.size();
        for (std::size_t i = 0; exact && i < idx.size(); ++i) exact = idx[i] == i;
        for (std::size_t i = 0; exact && i < trail.edges.size(); ++i) {
            const Edge& e = g.edges[trail.edges[i]];
            exact = VertexPair(e.u, e.v) == VertexPair(trail.vertices[i], trail.vertices[i + 1]);
        }
        tally.expect(exact, "euler seed " + std::to_string(seed));
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(mix_seed(seed, 74));
        const std::size_t n = 2 + rng.below(8);
        auto d = seeded_metric(n, mix_seed(seed, 75));
        std::vector<Vertex> seq;
        const std::size_t len = 2 + rng.below(14);
        for (std::size_t i = 0; i < len; ++i) seq.push_back(static_cast<Vertex>(rng.below(n)));
        const bool closed = rng.chance(0.5);
        Walk w = make_walk(seq, closed, d);
        Walk s = shortcut(w, iota_vertices(n), d);
        tally.expect(s.cost <= w.cost && s.cost == walk_cost(s.vertices, closed, d),
                     "shortcut seed " + std::to_string(seed));
    }
    return tally.outcome("100 matching/MST/Euler seeds, 1000 shortcut walks");
}

int run_tool(const std::string& tool, const std::string& args) {
    const std::string cmd = "\"" + tool + "\" " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism_and_io(const std::string& tool) {
    Tally tally;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GeneratorParams p;
        p.n = 4 + static_cast<int>(seed % 6);
        p.k = 1 + static_cast<int>(seed % 3);
        p.endpoints = seed % 2 ? EndpointsMode::Given : EndpointsMode::Free;
        const std::string a = serialize_instance(generate_random(p, seed));
        const std::string b = serialize_instance(generate_random(p, seed));
        tally.expect(a == b, "generation differs for seed " + std::to_string(seed));
        tally.expect(serialize_instance(parse_instance(a)) == a, "instance round trip seed " + std::to_string(seed));
        const MetricInstance inst = parse_instance(a);
        const GcrpSolution s1 = solve(inst), s2 = solve(inst);
        tally.expect(s1 == s2, "solve differs for seed " + std::to_string(seed));
        const std::string text = serialize_solution(s1);
        tally.expect(parse_solution(text).tour == s1.tour, "solution round trip seed " + std::to_string(seed));
    }

    BenchConfig config;
    config.seed_begin = 0;
    config.seed_end = 15;
    config.sizes = {{7, 2}, {8, 3}};
    config.algorithms = {SolverChoice::Alg2, SolverChoice::Alg3, SolverChoice::Alg4};
    const std::string r1 = report_tsv(run_bench(config));
    config.jobs = 3;
    const std::string r2 = report_tsv(run_bench(config));
    tally.expect(r1 == r2, "bench reports differ");
    config.fault = Fault::DropVertex;
    tally.expect(run_bench(config).has_violation(), "dropped vertex not reported");
    config.fault = Fault::MisreportCost;
    tally.expect(run_bench(config).has_violation(), "misreported cost not reported");

    std::string extra;
    if (!tool.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("gcrp_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::string gen = "gen --seed 7 --n 6 --k 2 --out ";
        tally.expect(run_tool(tool, gen + (dir / "a.txt").string()) == 0, "gen failed");
        tally.expect(run_tool(tool, gen + (dir / "b.txt").string()) == 0, "gen failed");
        tally.expect(slurp(dir / "a.txt") == slurp(dir / "b.txt") && !slurp(dir / "a.txt").empty(),
                     "gen output differs between runs");
        const std::string bench = "bench --seed 0:10 --sizes 7x2 --alg alg2,alg3,alg4";
        tally.expect(run_tool(tool, bench + " --out " + (dir / "r1.tsv").string()) == 0, "clean bench did not exit 0");
        tally.expect(run_tool(tool, bench + " --out " + (dir / "r2.tsv").string() + " --jobs 2") == 0,
                     "clean bench did not exit 0");
        tally.expect(slurp(dir / "r1.tsv") == slurp(dir / "r2.tsv"), "bench TSV differs between runs");
        tally.expect(run_tool(tool, bench + " --inject-fault drop-vertex --out " + (dir / "f.tsv").string()) == 3,
                     "faulty bench did not exit 3");
        tally.expect(run_tool(tool, bench + " --inject-fault misreport-cost --out " + (dir / "g.tsv").string()) == 3,
                     "faulty bench did not exit 3");
        fs::remove_all(dir);
        extra = ", command-line exit codes checked";
    } else {
        tally.expect(false, "no command-line tool given");
    }
    return tally.outcome("100 seeds of instance and solution round trips, bench reproducibility" + extra);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string tool = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"validity of solver output", validity_suite},
        {"specified ends within 12/5",
         [] { return ratio_suite(EndpointsMode::Given, CrossPolicy::Any, 1, {12, 5}, 2, false, "specified ends"); }},
        {"intra-cluster case within 13/4 with ledger bounds",
         [] { return ratio_suite(EndpointsMode::Free, CrossPolicy::None, 1, {13, 4}, 3, true, "intra-cluster"); }},
        {"cross-edge case within 9/4, single cycle within 3/2", cross_edge_suite},
        {"subroutine bounds", subroutine_bounds},
        {"oracle cross-validation", oracle_cross_validation},
        {"exact primitives", primitives},
        {"determinism and I/O", [&] { return determinism_and_io(tool); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].title << " ("
                  << o.detail << ")" << std::endl;
    }
    return all ? 0 : 1;
}
