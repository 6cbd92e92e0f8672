#include "gcrp/gcrp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gcrp/graphkit.hpp"
#include "gcrp/pathsolver.hpp"

namespace gcrp {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Alg2: return "Alg2";
        case Algorithm::Alg3T1: return "Alg3-T1";
        case Algorithm::Alg3T2: return "Alg3-T2";
        case Algorithm::Alg4: return "Alg4";
        case Algorithm::TsppCase: return "TsppCase";
    }
    return "unknown";
}

std::string to_string(SolverChoice c) {
    switch (c) {
        case SolverChoice::Auto: return "auto";
        case SolverChoice::Alg2: return "alg2";
        case SolverChoice::Alg3: return "alg3";
        case SolverChoice::Alg4: return "alg4";
    }
    return "unknown";
}

std::optional<SolverChoice> parse_solver_choice(std::string_view text) {
    if (text == "auto") return SolverChoice::Auto;
    if (text == "alg2") return SolverChoice::Alg2;
    if (text == "alg3") return SolverChoice::Alg3;
    if (text == "alg4") return SolverChoice::Alg4;
    return std::nullopt;
}

namespace {

// Shared per-instance data for the solvers.
struct Context {
    const MetricInstance& inst;
    RequiredLayout layout;
    std::vector<std::vector<std::vector<Vertex>>> components;  // per cluster

    explicit Context(const MetricInstance& i) : inst(i), layout(analyze_required(i)) {
        for (std::size_t c = 0; c < i.cluster_count(); ++c)
            components.push_back(connected_components(layout.content[c], layout.internal_edges[c]));
    }

    const DistanceMatrix& dist() const { return inst.dist; }

    ClusterPath path(int c, std::optional<Vertex> s, std::optional<Vertex> t) const {
        RequiredSets req{layout.content[c], layout.internal_edges[c]};
        ClusterPath p;
        p.cluster = c;
        p.path = tgpp_path(req, inst.dist, s, t);
        p.start = p.path.vertices.front();
        p.end = p.path.vertices.back();
        return p;
    }

    bool is_end(Vertex v) const { return layout.internal_degree(v) <= 1; }

    // a and b can be the two ends of a Hamiltonian path of the cluster.
    bool compatible(int c, Vertex a, Vertex b) const {
        const auto& comps = components[c];
        if (a == b) return comps.size() == 1 && comps.front().size() == 1;
        auto owner = [&](Vertex v) {
            for (std::size_t i = 0; i < comps.size(); ++i)
                if (std::binary_search(comps[i].begin(), comps[i].end(), v)) return static_cast<int>(i);
            return -1;
        };
        return is_end(a) && is_end(b) && (owner(a) != owner(b) || comps.size() == 1);
    }

    // Farthest partner b for a (or the farthest valid pair when a is absent);
    // ties go to the lexicographically smallest pair.
    std::pair<Vertex, Vertex> far_pair(int c, std::optional<Vertex> a) const {
        const auto& content = layout.content[c];
        if (content.size() == 1) return {content[0], content[0]};
        std::optional<std::tuple<Cost, Vertex, Vertex>> best;
        auto consider = [&](Vertex x, Vertex y) {
            if (!compatible(c, x, y)) return;
            std::tuple<Cost, Vertex, Vertex> key{-inst.dist(x, y), x, y};
            if (!best || key < *best) best = key;
        };
        if (a) {
            for (Vertex y : content)
                if (y != *a) consider(*a, y);
        } else {
            for (std::size_t i = 0; i < content.size(); ++i)
                for (std::size_t j = i + 1; j < content.size(); ++j) consider(content[i], content[j]);
        }
        if (!best) throw InvalidArgument("no admissible end pair in cluster " + std::to_string(c));
        return {std::get<1>(*best), std::get<2>(*best)};
    }

    std::vector<int> content_clusters() const {
        std::vector<int> out;
        for (std::size_t c = 0; c < inst.cluster_count(); ++c)
            if (layout.has_content(static_cast<int>(c))) out.push_back(static_cast<int>(c));
        return out;
    }
};

FeasibilityVerdict require_feasible(const MetricInstance& inst) {
    FeasibilityVerdict v = classify(inst);
    if (!v.feasible()) throw InfeasibleInstance(v);
    return v;
}

void require_case(const FeasibilityVerdict& v, CaseTag expected, const char* solver) {
    if (v.case_tag != expected)
        throw DispatchError(std::string(solver) + " handles " + to_string(expected) + " instances; this one is " +
                            to_string(v.case_tag));
}

std::vector<Vertex> concat(const std::vector<ClusterPath>& paths) {
    std::vector<Vertex> seq;
    for (const auto& p : paths) seq.insert(seq.end(), p.path.vertices.begin(), p.path.vertices.end());
    return seq;
}

// Replaces each special arc of the route by its segment.
Walk expand_route(const ArcRoute& route, const std::vector<std::vector<Vertex>>& segments, const DistanceMatrix& dist) {
    std::vector<Vertex> seq;
    for (std::size_t j = 0; j < route.order.size(); ++j) {
        const auto& seg = segments[route.order[j]];
        if (route.reversed[j])
            seq.insert(seq.end(), seg.rbegin(), seg.rend());
        else
            seq.insert(seq.end(), seg.begin(), seg.end());
    }
    return make_walk(std::move(seq), true, dist);
}

// Orders segments as special arcs (front -> back) with the given arc solver.
Walk route_segments(const std::vector<std::vector<Vertex>>& segments, bool directed, const DistanceMatrix& dist,
                    Cost* special_length) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (const auto& seg : segments) arcs.emplace_back(seg.front(), seg.back());
    const ArcTask task = make_arc_task(arcs, directed, dist);
    if (special_length) *special_length = task.total_length();
    if (segments.size() == 1) return make_walk(segments.front(), true, dist);
    const ArcRoute route = directed ? scp_solve(task, dist) : rpp_solve(task, dist);
    return expand_route(route, segments, dist);
}

std::vector<ClusterPath> sorted_paths(std::vector<ClusterPath> paths) {
    std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.cluster < b.cluster; });
    return paths;
}

// Fixed-end cluster paths for every cluster followed by the arc routing of
// the chain segments (the specified-ends machinery).
GcrpSolution route_fixed_ends(const Context& ctx, const std::vector<ClusterChain>& chains,
                              const std::vector<std::pair<Vertex, Vertex>>& ends, Algorithm tag) {
    GcrpSolution sol;
    sol.algorithm = tag;
    std::vector<std::vector<Vertex>> segments;
    for (const auto& chain : chains) {
        std::vector<ClusterPath> paths;
        for (int c : chain.clusters) paths.push_back(ctx.path(c, ends[c].first, ends[c].second));
        segments.push_back(concat(paths));
        sol.per_cluster.insert(sol.per_cluster.end(), paths.begin(), paths.end());
    }
    sol.per_cluster = sorted_paths(std::move(sol.per_cluster));
    Cost d = 0;
    if (chains.size() == 1 && chains.front().cyclic) {
        sol.tour = make_walk(segments.front(), true, ctx.dist());
    } else {
        sol.tour = route_segments(segments, true, ctx.dist(), &d);
    }
    sol.ledger.D = d;
    sol.candidates.push_back({tag, sol.tour.cost});
    return sol;
}

GcrpSolution empty_solution(Algorithm tag) {
    GcrpSolution sol;
    sol.algorithm = tag;
    sol.tour.closed = true;
    sol.ledger.D = 0;
    sol.candidates.push_back({tag, 0});
    return sol;
}

}  // namespace

PreshrinkResult preshrink_cross_edges(const MetricInstance& inst) {
    if (!inst.ends) throw InvalidArgument("preshrink_cross_edges: instance has no specified ends");
    const RequiredLayout layout = analyze_required(inst);
    auto chains = build_cluster_chains(inst, layout);
    if (!chains) throw InfeasibleInstance(classify(inst));
    for (const VertexPair& e : layout.cross_edges) {
        const int cu = layout.cluster_of[e.u];
        const int cv = layout.cluster_of[e.v];
        const auto& ends = *inst.ends;
        bool ok = (e.u == ends[cu].end && e.v == ends[cv].start) || (e.v == ends[cv].end && e.u == ends[cu].start);
        if (!ok) throw InfeasibleInstance(classify(inst));
    }
    PreshrinkResult out;
    std::vector<std::vector<Vertex>> clusters;
    std::vector<ClusterEnds> ends;
    for (const auto& chain : *chains) {
        std::vector<Vertex> members;
        for (int c : chain.clusters) members.insert(members.end(), inst.clusters[c].begin(), inst.clusters[c].end());
        clusters.push_back(std::move(members));
        ends.push_back({(*inst.ends)[chain.clusters.front()].start, (*inst.ends)[chain.clusters.back()].end});
    }
    out.reduced = make_instance(inst.dist, std::move(clusters), inst.required_vertices, inst.required_edges,
                                std::move(ends));
    out.chains = std::move(*chains);
    return out;
}

GcrpSolution solve_specified(const MetricInstance& inst) {
    const FeasibilityVerdict v = require_feasible(inst);
    require_case(v, CaseTag::SpecifiedEnds, "alg2");
    const Context ctx(inst);
    const PreshrinkResult shrunk = preshrink_cross_edges(inst);
    std::vector<std::pair<Vertex, Vertex>> ends;
    for (const auto& e : *inst.ends) ends.emplace_back(e.start, e.end);
    return route_fixed_ends(ctx, shrunk.chains, ends, Algorithm::Alg2);
}

GcrpSolution solve_unspecified_intra(const MetricInstance& inst) {
    const FeasibilityVerdict v = require_feasible(inst);
    require_case(v, CaseTag::UnspecifiedIntraOnly, "alg3");
    const Context ctx(inst);
    const std::vector<int> active = ctx.content_clusters();
    if (active.empty()) {
        GcrpSolution none = empty_solution(Algorithm::Alg3T1);
        none.candidates = {{Algorithm::Alg3T1, 0}, {Algorithm::Alg3T2, 0}};
        return none;
    }

    // T1: free-ends paths joined by a rural postman tour over their end pairs.
    GcrpSolution t1;
    t1.algorithm = Algorithm::Alg3T1;
    std::vector<std::vector<Vertex>> segments;
    for (int c : active) {
        t1.per_cluster.push_back(ctx.path(c, std::nullopt, std::nullopt));
        segments.push_back(t1.per_cluster.back().path.vertices);
    }
    t1.tour = route_segments(segments, false, ctx.dist(), nullptr);

    // T2: the farthest admissible end pair per cluster, then the fixed-ends
    // machinery.
    std::vector<std::pair<Vertex, Vertex>> ends(inst.cluster_count(), {-1, -1});
    std::vector<ClusterChain> chains;
    Cost d = 0;
    for (int c : active) {
        ends[c] = ctx.far_pair(c, std::nullopt);
        d += inst.dist(ends[c].first, ends[c].second);
        chains.push_back({{c}, {}, false});
    }
    GcrpSolution t2 = route_fixed_ends(ctx, chains, ends, Algorithm::Alg3T2);

    GcrpSolution& best = t2.tour.cost < t1.tour.cost ? t2 : t1;
    GcrpSolution out = std::move(best);
    out.ledger = BoundsLedger{};
    out.ledger.D = d;
    out.candidates = {{Algorithm::Alg3T1, t1.tour.cost}, {Algorithm::Alg3T2, t2.tour.cost}};
    return out;
}

GcrpSolution solve_unspecified_cross(const MetricInstance& inst) {
    const FeasibilityVerdict v = require_feasible(inst);
    require_case(v, CaseTag::UnspecifiedWithCrossEdges, "alg4");
    const Context ctx(inst);
    const auto chains = build_cluster_chains(inst, ctx.layout);
    if (!chains) throw InfeasibleInstance(v);

    if (chains->size() == 1 && chains->front().cyclic) {
        // Cross edges close a cycle through every cluster: entry and exit of
        // each cluster are forced.
        const auto& chain = chains->front();
        std::vector<std::pair<Vertex, Vertex>> ends(inst.cluster_count(), {-1, -1});
        const std::size_t r = chain.clusters.size();
        for (std::size_t j = 0; j < r; ++j)
            ends[chain.clusters[j]] = {chain.links[(j + r - 1) % r].second, chain.links[j].first};
        return route_fixed_ends(ctx, *chains, ends, Algorithm::TsppCase);
    }

    GcrpSolution sol;
    sol.algorithm = Algorithm::Alg4;
    std::vector<std::vector<Vertex>> segments;
    for (const auto& chain : *chains) {
        std::vector<ClusterPath> paths;
        const std::size_t r = chain.clusters.size();
        if (r == 1) {
            paths.push_back(ctx.path(chain.clusters[0], std::nullopt, std::nullopt));
        } else {
            for (std::size_t j = 0; j < r; ++j) {
                const int c = chain.clusters[j];
                if (j == 0) {
                    const Vertex a = chain.links.front().first;
                    paths.push_back(ctx.path(c, ctx.far_pair(c, a).second, a));
                } else if (j + 1 == r) {
                    const Vertex a = chain.links.back().second;
                    paths.push_back(ctx.path(c, a, ctx.far_pair(c, a).second));
                } else {
                    paths.push_back(ctx.path(c, chain.links[j - 1].second, chain.links[j].first));
                }
            }
        }
        segments.push_back(concat(paths));
        sol.per_cluster.insert(sol.per_cluster.end(), paths.begin(), paths.end());
    }
    sol.per_cluster = sorted_paths(std::move(sol.per_cluster));
    Cost d = 0;
    sol.tour = route_segments(segments, false, ctx.dist(), &d);
    sol.ledger.D = d;
    sol.candidates.push_back({Algorithm::Alg4, sol.tour.cost});
    return sol;
}

GcrpSolution solve(const MetricInstance& inst, SolverChoice choice) {
    const FeasibilityVerdict v = require_feasible(inst);
    SolverChoice needed = SolverChoice::Alg2;
    if (v.case_tag == CaseTag::UnspecifiedIntraOnly) needed = SolverChoice::Alg3;
    if (v.case_tag == CaseTag::UnspecifiedWithCrossEdges) needed = SolverChoice::Alg4;
    if (choice != SolverChoice::Auto && choice != needed)
        throw DispatchError(to_string(choice) + " does not apply: instance case is " + to_string(v.case_tag) +
                            ", which requires " + to_string(needed));
    switch (needed) {
        case SolverChoice::Alg3: return solve_unspecified_intra(inst);
        case SolverChoice::Alg4: return solve_unspecified_cross(inst);
        default: return solve_specified(inst);
    }
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_tour(const MetricInstance& inst, const Walk& tour) {
    std::vector<std::string> problems;
    const auto& w = tour.vertices;
    const std::size_t n = w.size();
    const int nv = static_cast<int>(inst.size());
    for (Vertex v : w)
        if (v < 0 || v >= nv) {
            problems.push_back("vertex " + std::to_string(v) + " out of range");
            return problems;
        }
    if (!tour.closed && n > 0) problems.push_back("tour is not closed");
    if (walk_cost(w, true, inst.dist) != tour.cost)
        problems.push_back("recorded cost " + std::to_string(tour.cost) + " differs from recomputed " +
                           std::to_string(walk_cost(w, true, inst.dist)));

    std::map<Vertex, int> count;
    for (Vertex v : w) count[v] += 1;
    for (Vertex v : inst.required_vertices)
        if (count[v] != 1)
            problems.push_back("required vertex " + std::to_string(v) + " visited " + std::to_string(count[v]) +
                               " times");
    for (const VertexPair& e : inst.required_edges)
        if (!walk_has_step(tour, e.u, e.v, false))
            problems.push_back("required edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                               ") not traversed");

    std::vector<int> cluster_of(inst.size(), -1);
    for (std::size_t c = 0; c < inst.cluster_count(); ++c)
        for (Vertex v : inst.clusters[c]) cluster_of[v] = static_cast<int>(c);
    auto cl = [&](std::size_t pos) { return cluster_of[w[pos % n]]; };
    std::vector<int> exits(inst.cluster_count(), 0);
    for (std::size_t j = 0; j < n; ++j)
        if (cl(j) != cl(j + 1)) exits[cl(j)] += 1;
    for (std::size_t c = 0; c < inst.cluster_count(); ++c)
        if (exits[c] > 1)
            problems.push_back("cluster " + std::to_string(c) + " is visited in " + std::to_string(exits[c]) +
                               " separate blocks");

    if (inst.ends) {
        // Each cluster's block must run s_i ... t_i, all in one direction.
        auto blocks_fit = [&](bool forward) {
            for (std::size_t c = 0; c < inst.cluster_count(); ++c) {
                const int ci = static_cast<int>(c);
                Vertex s = (*inst.ends)[c].start;
                Vertex t = (*inst.ends)[c].end;
                if (!forward) std::swap(s, t);
                if (exits[c] == 0) {
                    // absent, or the whole tour
                    if (cl(0) != ci) return false;
                    bool ok = false;
                    for (std::size_t j = 0; j < n; ++j) ok = ok || (w[j] == s && w[(j + n - 1) % n] == t);
                    if (!ok) return false;
                    continue;
                }
                std::size_t j = 0;
                while (!(cl(j) == ci && cl(j + n - 1) != ci)) ++j;
                std::size_t last = j;
                while (cl(last + 1) == ci) ++last;
                if (w[j] != s || w[last % n] != t) return false;
            }
            return true;
        };
        if (n > 0 && !blocks_fit(true) && !blocks_fit(false))
            problems.push_back("cluster blocks do not run from their specified start to their specified end");
        if (n == 0) problems.push_back("empty tour although cluster ends are specified");
    }
    return problems;
}

BoundsLedger ledger_from_reference(const MetricInstance& inst, const Walk& reference) {
    const auto& w = reference.vertices;
    const std::size_t n = w.size();
    std::vector<int> cluster_of(inst.size(), -1);
    for (std::size_t c = 0; c < inst.cluster_count(); ++c)
        for (Vertex v : inst.clusters[c]) cluster_of[v] = static_cast<int>(c);
    std::set<int> seen;
    for (Vertex v : w) seen.insert(cluster_of[v]);
    Cost inside = 0;
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (cluster_of[w[j]] == cluster_of[w[j + 1]]) inside += inst.dist(w[j], w[j + 1]);
    if (n > 1 && seen.size() > 1 && cluster_of[w[n - 1]] == cluster_of[w[0]]) inside += inst.dist(w[n - 1], w[0]);
    BoundsLedger ledger;
    ledger.L = inside;
    ledger.A = reference.cost - inside;
    ledger.opt_ref = reference.cost;
    return ledger;
}

}  // namespace gcrp
