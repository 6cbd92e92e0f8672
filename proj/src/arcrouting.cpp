#include "gcrp/arcrouting.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "gcrp/graphkit.hpp"
#include "gcrp/pathsolver.hpp"

namespace gcrp {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

std::vector<Vertex> arc_endpoints(const std::vector<Arc>& arcs) {
    std::vector<Vertex> v;
    for (const Arc& a : arcs) {
        v.push_back(a.tail);
        v.push_back(a.head);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

ArcRoute empty_route() {
    ArcRoute r;
    r.walk.closed = true;
    return r;
}

// Order in which an Euler circuit first uses the special edges 0..m-1.
ArcRoute route_from_trail(const ArcTask& task, const Multigraph& g, const EulerTrail& trail,
                          const DistanceMatrix& dist) {
    const std::size_t m = task.arcs.size();
    std::vector<bool> taken(m, false);
    std::vector<int> order;
    std::vector<bool> reversed;
    for (std::size_t i = 0; i < trail.edges.size(); ++i) {
        const std::size_t e = trail.edges[i];
        if (e >= m || taken[e]) continue;
        taken[e] = true;
        order.push_back(static_cast<int>(e));
        const Arc& a = task.arcs[e];
        reversed.push_back(!task.directed && a.tail != a.head && trail.vertices[i] != g.edges[e].u);
    }
    if (order.size() != m) throw GraphError("arc route: Euler circuit missed a special arc");
    return make_arc_route(task, std::move(order), std::move(reversed), dist);
}

// Groups of vertices joined by a minimum spanning tree whose edges are
// realized by the closest vertex pair between groups.
std::vector<Edge> connect_groups(const std::vector<std::vector<Vertex>>& groups, const DistanceMatrix& dist) {
    const std::size_t g = groups.size();
    if (g <= 1) return {};
    DistanceMatrix between(g, 0);
    std::vector<std::vector<std::pair<Vertex, Vertex>>> via(g, std::vector<std::pair<Vertex, Vertex>>(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) {
            std::tuple<Cost, Vertex, Vertex> best{kInf, 0, 0};
            for (Vertex x : groups[i])
                for (Vertex y : groups[j]) {
                    std::tuple<Cost, Vertex, Vertex> key{dist(x, y), std::min(x, y), std::max(x, y)};
                    if (key < best) {
                        best = key;
                        via[i][j] = {x, y};
                    }
                }
            between.set(static_cast<Vertex>(i), static_cast<Vertex>(j), std::get<0>(best));
            via[j][i] = {via[i][j].second, via[i][j].first};
        }
    std::vector<Vertex> nodes(g);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::vector<Edge> out;
    for (const Edge& e : minimum_spanning_tree(nodes, between).edges) {
        auto [x, y] = via[e.u][e.v];
        out.push_back({x, y, dist(x, y)});
    }
    return out;
}

ArcRoute cheaper(ArcRoute a, ArcRoute b) { return b.walk.cost < a.walk.cost ? b : a; }

}  // namespace

Cost ArcTask::total_length() const {
    Cost d = 0;
    for (const Arc& a : arcs) d += a.length;
    return d;
}

ArcTask make_arc_task(const std::vector<std::pair<Vertex, Vertex>>& arcs, bool directed, const DistanceMatrix& dist) {
    ArcTask task;
    task.directed = directed;
    for (auto [a, b] : arcs) task.arcs.push_back({a, b, dist(a, b)});
    return task;
}

ArcRoute make_arc_route(const ArcTask& task, std::vector<int> order, std::vector<bool> reversed,
                        const DistanceMatrix& dist) {
    if (reversed.size() != order.size()) throw InvalidArgument("make_arc_route: orientation list size mismatch");
    std::vector<Vertex> seq;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const Arc& a = task.arcs.at(static_cast<std::size_t>(order[j]));
        if (reversed[j] && task.directed) throw InvalidArgument("make_arc_route: directed arcs cannot be reversed");
        seq.push_back(reversed[j] ? a.head : a.tail);
        seq.push_back(reversed[j] ? a.tail : a.head);
    }
    ArcRoute r;
    r.order = std::move(order);
    r.reversed = std::move(reversed);
    r.walk = make_compact_walk(std::move(seq), true, dist);
    return r;
}

bool walk_traverses(const Walk& walk, const Arc& arc, bool directed) {
    if (arc.tail == arc.head)
        return std::find(walk.vertices.begin(), walk.vertices.end(), arc.tail) != walk.vertices.end();
    return walk_has_step(walk, arc.tail, arc.head, directed);
}

CycleCover directed_cycle_cover(const std::vector<Arc>& arcs, const DistanceMatrix& dist) {
    const std::size_t m = arcs.size();
    if (m == 0) throw InvalidArgument("directed_cycle_cover: no arcs");
    std::vector<std::vector<Cost>> cost(m, std::vector<Cost>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) cost[i][j] = dist(arcs[i].head, arcs[j].tail);
    const Assignment a = solve_assignment(cost);
    CycleCover cover;
    cover.successor = a.column_of_row;
    cover.connector_cost = a.cost;
    std::vector<bool> seen(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (seen[i]) continue;
        std::vector<int> cycle;
        for (int x = static_cast<int>(i); !seen[x]; x = cover.successor[x]) {
            seen[x] = true;
            cycle.push_back(x);
        }
        cover.cycles.push_back(std::move(cycle));
    }
    return cover;
}

ArcRoute scp_short_arcs(const ArcTask& task, const DistanceMatrix& dist) {
    const auto& arcs = task.arcs;
    const std::size_t m = arcs.size();
    if (m == 0) return empty_route();
    if (m == 1) return make_arc_route(task, {0}, {false}, dist);

    // Each arc shrinks to a node; nodes are as close as their nearest
    // endpoints, closed under shortest paths.
    DistanceMatrix node(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Cost best = kInf;
            for (Vertex x : {arcs[i].tail, arcs[i].head})
                for (Vertex y : {arcs[j].tail, arcs[j].head}) best = std::min(best, dist(x, y));
            node.set(static_cast<Vertex>(i), static_cast<Vertex>(j), best);
        }
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                auto I = static_cast<Vertex>(i), J = static_cast<Vertex>(j), K = static_cast<Vertex>(k);
                if (node(I, K) + node(K, J) < node(I, J)) node.at(I, J) = node(I, K) + node(K, J);
            }
    std::vector<Vertex> nodes(m);
    std::iota(nodes.begin(), nodes.end(), 0);
    const Walk tour = christofides(nodes, node);

    std::vector<int> forward(tour.vertices.begin(), tour.vertices.end());
    std::vector<int> backward(forward.rbegin(), forward.rend());
    const std::vector<bool> plain(m, false);
    return cheaper(make_arc_route(task, forward, plain, dist), make_arc_route(task, backward, plain, dist));
}

ArcRoute scp_long_arcs(const ArcTask& task, const DistanceMatrix& dist) {
    const auto& arcs = task.arcs;
    const std::size_t m = arcs.size();
    if (m == 0) return empty_route();
    const CycleCover cover = directed_cycle_cover(arcs, dist);
    if (cover.cycles.size() == 1) return make_arc_route(task, cover.cycles[0], std::vector<bool>(m, false), dist);

    Multigraph g{arc_endpoints(arcs), {}};
    for (const Arc& a : arcs) g.edges.push_back({a.tail, a.head, a.length});
    for (std::size_t i = 0; i < m; ++i) {
        Vertex from = arcs[i].head;
        Vertex to = arcs[cover.successor[i]].tail;
        g.edges.push_back({from, to, dist(from, to)});
    }
    std::vector<std::vector<Vertex>> groups;
    for (const auto& cycle : cover.cycles) {
        std::vector<Arc> part;
        for (int i : cycle) part.push_back(arcs[i]);
        groups.push_back(arc_endpoints(part));
    }
    for (const Edge& e : connect_groups(groups, dist)) {
        g.edges.push_back({e.u, e.v, e.cost});
        g.edges.push_back({e.v, e.u, e.cost});
    }
    const EulerTrail trail = directed_eulerian_circuit(g, arcs[0].tail);
    return route_from_trail(task, g, trail, dist);
}

ArcRoute scp_solve(const ArcTask& task, const DistanceMatrix& dist) {
    return cheaper(scp_short_arcs(task, dist), scp_long_arcs(task, dist));
}

ArcRoute rpp_short_arcs(const ArcTask& task, const DistanceMatrix& dist) {
    const auto& arcs = task.arcs;
    const std::size_t m = arcs.size();
    if (m == 0) return empty_route();

    // Connect the components of the required edges by a spanning tree, then
    // repair parity with a minimum matching.
    const std::vector<Vertex> ends = arc_endpoints(arcs);
    std::vector<VertexPair> pairs;
    for (const Arc& a : arcs) pairs.emplace_back(a.tail, a.head);
    Multigraph g{ends, {}};
    for (const Arc& a : arcs) g.edges.push_back({a.tail, a.head, a.length});
    for (const Edge& e : connect_groups(connected_components(ends, pairs), dist)) g.edges.push_back(e);
    std::map<Vertex, int> degree;
    for (const Edge& e : g.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    std::vector<Vertex> odd;
    for (auto [v, d] : degree)
        if (d % 2 == 1) odd.push_back(v);
    for (const Edge& e : min_weight_perfect_matching(odd, dist).edges) g.edges.push_back(e);
    const EulerTrail trail = eulerian_walk(g, arcs[0].tail, arcs[0].tail);
    return route_from_trail(task, g, trail, dist);
}

ArcRoute rpp_long_arcs(const ArcTask& task, const DistanceMatrix& dist) {
    const auto& arcs = task.arcs;
    const std::size_t m = arcs.size();
    if (m == 0) return empty_route();

    // Pair up the 2m edge ends by a minimum perfect matching: together with
    // the required edges this is a cover by cycles.
    std::vector<Vertex> slot_vertex;
    for (const Arc& a : arcs) {
        slot_vertex.push_back(a.tail);
        slot_vertex.push_back(a.head);
    }
    const DistanceMatrix slot_dist = dist.restricted_to(slot_vertex);
    std::vector<Vertex> slots(2 * m);
    std::iota(slots.begin(), slots.end(), 0);
    const Matching cover = min_weight_perfect_matching(slots, slot_dist);

    const std::vector<Vertex> ends = arc_endpoints(arcs);
    Multigraph g{ends, {}};
    std::vector<VertexPair> pairs;
    for (const Arc& a : arcs) {
        g.edges.push_back({a.tail, a.head, a.length});
        pairs.emplace_back(a.tail, a.head);
    }
    for (const Edge& e : cover.edges) {
        Vertex x = slot_vertex[e.u];
        Vertex y = slot_vertex[e.v];
        g.edges.push_back({x, y, dist(x, y)});
        pairs.emplace_back(x, y);
    }
    for (const Edge& e : connect_groups(connected_components(ends, pairs), dist)) {
        g.edges.push_back(e);
        g.edges.push_back(e);
    }
    const EulerTrail trail = eulerian_walk(g, arcs[0].tail, arcs[0].tail);
    return route_from_trail(task, g, trail, dist);
}

ArcRoute rpp_solve(const ArcTask& task, const DistanceMatrix& dist) {
    return cheaper(rpp_short_arcs(task, dist), rpp_long_arcs(task, dist));
}

}  // namespace gcrp
