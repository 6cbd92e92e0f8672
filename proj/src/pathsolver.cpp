#include "gcrp/pathsolver.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>

#include "gcrp/graphkit.hpp"

namespace gcrp {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

std::vector<Vertex> all_nodes(std::size_t m) {
    std::vector<Vertex> v(m);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

Walk single_node(Vertex v) { return Walk{{v}, false, 0}; }

// Tree distances and parents from `root`.
std::pair<std::vector<Cost>, std::vector<Vertex>> tree_sweep(const SpanningTree& tree, std::size_t m, Vertex root) {
    std::vector<std::vector<std::pair<Vertex, Cost>>> adj(m);
    for (const Edge& e : tree.edges) {
        adj[e.u].push_back({e.v, e.cost});
        adj[e.v].push_back({e.u, e.cost});
    }
    std::vector<Cost> depth(m, -1);
    std::vector<Vertex> parent(m, -1);
    std::vector<Vertex> stack{root};
    depth[root] = 0;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (auto [y, c] : adj[x])
            if (depth[y] < 0) {
                depth[y] = depth[x] + c;
                parent[y] = x;
                stack.push_back(y);
            }
    }
    return {depth, parent};
}

Vertex farthest(const std::vector<Cost>& depth) {
    return static_cast<Vertex>(std::max_element(depth.begin(), depth.end()) - depth.begin());
}

Walk relabel(const Walk& local, std::span<const Vertex> ids, const DistanceMatrix& dist) {
    std::vector<Vertex> seq;
    seq.reserve(local.vertices.size());
    for (Vertex x : local.vertices) seq.push_back(ids[x]);
    return make_walk(std::move(seq), local.closed, dist);
}

std::size_t index_of(std::span<const Vertex> vertices, Vertex v, const char* what) {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw InvalidArgument(std::string(what) + " is not among the vertices");
    return static_cast<std::size_t>(it - vertices.begin());
}

void check_distinct(std::span<const Vertex> vertices) {
    std::vector<Vertex> v(vertices.begin(), vertices.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw InvalidArgument("vertex list has duplicates");
}

}  // namespace

Walk tree_doubling_route(const DistanceMatrix& cost, std::optional<Vertex> first, std::optional<Vertex> last) {
    const std::size_t m = cost.size();
    if (m == 0) throw InvalidArgument("tree_doubling_route: no nodes");
    if (m == 1) return single_node(0);
    if (first && last && *first == *last) throw InvalidArgument("tree_doubling_route: first and last coincide");

    const auto nodes = all_nodes(m);
    const SpanningTree tree = minimum_spanning_tree(nodes, cost);
    bool reversed = false;
    Vertex a;
    Vertex b;
    if (first && last) {
        a = *first;
        b = *last;
    } else if (first || last) {
        a = first ? *first : *last;
        b = farthest(tree_sweep(tree, m, a).first);
        reversed = !first;
    } else {
        a = farthest(tree_sweep(tree, m, 0).first);
        b = farthest(tree_sweep(tree, m, a).first);
    }

    // Tree edges on the a-b path are used once, all others twice.
    const auto parent = tree_sweep(tree, m, a).second;
    std::vector<VertexPair> on_path;
    for (Vertex x = b; x != a; x = parent[x]) on_path.emplace_back(x, parent[x]);
    std::sort(on_path.begin(), on_path.end());
    Multigraph g{nodes, {}};
    for (const Edge& e : tree.edges) {
        g.edges.push_back(e);
        if (!std::binary_search(on_path.begin(), on_path.end(), VertexPair(e.u, e.v))) g.edges.push_back(e);
    }
    const EulerTrail trail = eulerian_walk(g, a, b);
    Walk w = shortcut(make_walk(trail.vertices, false, cost), nodes, cost);
    if (reversed) {
        std::reverse(w.vertices.begin(), w.vertices.end());
        w = make_walk(std::move(w.vertices), false, cost);
    }
    return w;
}

Walk matching_route(const DistanceMatrix& cost, std::optional<Vertex> first, std::optional<Vertex> last) {
    const std::size_t m = cost.size();
    if (m == 0) throw InvalidArgument("matching_route: no nodes");
    if (m == 1) return single_node(0);
    if (first && last && *first == *last) throw InvalidArgument("matching_route: first and last coincide");

    const auto nodes = all_nodes(m);
    const SpanningTree tree = minimum_spanning_tree(nodes, cost);
    std::vector<int> degree(m, 0);
    for (const Edge& e : tree.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    std::vector<bool> wrong(m);
    for (std::size_t x = 0; x < m; ++x) wrong[x] = degree[x] % 2 == 1;
    if (first) wrong[*first] = !wrong[*first];
    if (last) wrong[*last] = !wrong[*last];
    std::vector<Vertex> targets;
    for (std::size_t x = 0; x < m; ++x)
        if (wrong[x]) targets.push_back(static_cast<Vertex>(x));

    // Each free end may absorb one unmatched vertex through a zero-cost
    // dummy; a fixed end must never be left to a dummy.
    const std::size_t free_ends = 2 - (first ? 1 : 0) - (last ? 1 : 0);
    const std::size_t slots = targets.size() + free_ends;
    Cost big = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) big += cost(static_cast<Vertex>(i), static_cast<Vertex>(j));
    DistanceMatrix local(slots, 0);
    for (std::size_t i = 0; i < slots; ++i)
        for (std::size_t j = 0; j < slots; ++j) {
            if (i == j) continue;
            const bool ri = i < targets.size();
            const bool rj = j < targets.size();
            Cost c = 0;
            if (ri && rj) {
                c = cost(targets[i], targets[j]);
            } else if (ri || rj) {
                Vertex real = ri ? targets[i] : targets[j];
                c = (first && real == *first) || (last && real == *last) ? big : 0;
            }
            local.at(static_cast<Vertex>(i), static_cast<Vertex>(j)) = c;
        }
    const Matching matching = min_weight_perfect_matching(all_nodes(slots), local);

    Multigraph g{nodes, tree.edges};
    for (const Edge& e : matching.edges) {
        if (static_cast<std::size_t>(e.u) >= targets.size() || static_cast<std::size_t>(e.v) >= targets.size()) continue;
        Vertex x = targets[e.u];
        Vertex y = targets[e.v];
        g.edges.push_back({x, y, cost(x, y)});
    }
    std::fill(degree.begin(), degree.end(), 0);
    for (const Edge& e : g.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    std::vector<Vertex> odd;
    for (std::size_t x = 0; x < m; ++x)
        if (degree[x] % 2 == 1) odd.push_back(static_cast<Vertex>(x));

    if (odd.empty()) {
        // Both ends free and the dummies paired up: cut the dearest link of
        // the closed tour.
        const EulerTrail trail = eulerian_walk(g, 0, 0);
        std::vector<Vertex> seq(trail.vertices.begin(), trail.vertices.end() - 1);
        Walk tour = shortcut(make_walk(seq, true, cost), nodes, cost);
        const auto& v = tour.vertices;
        std::size_t cut = 0;
        Cost worst = -1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            Cost c = cost(v[i], v[(i + 1) % v.size()]);
            if (c > worst) {
                worst = c;
                cut = i;
            }
        }
        std::vector<Vertex> path;
        for (std::size_t i = 1; i <= v.size(); ++i) path.push_back(v[(cut + i) % v.size()]);
        return make_walk(std::move(path), false, cost);
    }
    if (odd.size() != 2) throw GraphError("matching_route: parity repair failed");
    Vertex a = odd[0];
    Vertex b = odd[1];
    if ((first && *first == b) || (last && *last == a)) std::swap(a, b);
    const EulerTrail trail = eulerian_walk(g, a, b);
    return shortcut(make_walk(trail.vertices, false, cost), nodes, cost);
}

Walk christofides(std::span<const Vertex> vertices, const DistanceMatrix& dist) {
    if (vertices.empty()) throw InvalidArgument("christofides: no vertices");
    check_distinct(vertices);
    if (vertices.size() == 1) return Walk{{vertices[0]}, true, 0};

    const SpanningTree tree = minimum_spanning_tree(vertices, dist);
    std::map<Vertex, int> degree;
    for (const Edge& e : tree.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    std::vector<Vertex> odd;
    for (auto [v, d] : degree)
        if (d % 2 == 1) odd.push_back(v);
    const Matching matching = min_weight_perfect_matching(odd, dist);
    Multigraph g{std::vector<Vertex>(vertices.begin(), vertices.end()), tree.edges};
    g.edges.insert(g.edges.end(), matching.edges.begin(), matching.edges.end());
    const EulerTrail trail = eulerian_walk(g, vertices[0], vertices[0]);
    std::vector<Vertex> seq(trail.vertices.begin(), trail.vertices.end() - 1);
    return shortcut(make_walk(std::move(seq), true, dist), vertices, dist);
}

PathPair hoogeveen_fixed_ends(std::span<const Vertex> vertices, const DistanceMatrix& dist, Vertex s, Vertex t) {
    if (s == t) throw InvalidArgument("hoogeveen_fixed_ends: s = t, use christofides");
    check_distinct(vertices);
    const auto si = static_cast<Vertex>(index_of(vertices, s, "s"));
    const auto ti = static_cast<Vertex>(index_of(vertices, t, "t"));
    const DistanceMatrix local = dist.restricted_to(vertices);
    PathPair pair;
    pair.s1 = relabel(tree_doubling_route(local, si, ti), vertices, dist);
    pair.s2 = relabel(matching_route(local, si, ti), vertices, dist);
    pair.chosen = pair.s2.cost < pair.s1.cost ? pair.s2 : pair.s1;
    return pair;
}

Walk hoogeveen_free_ends(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                         std::optional<Vertex> fixed_end) {
    if (vertices.empty()) throw InvalidArgument("hoogeveen_free_ends: no vertices");
    check_distinct(vertices);
    std::optional<Vertex> fi;
    if (fixed_end) fi = static_cast<Vertex>(index_of(vertices, *fixed_end, "fixed end"));
    const DistanceMatrix local = dist.restricted_to(vertices);
    Walk a = relabel(tree_doubling_route(local, fi, std::nullopt), vertices, dist);
    Walk b = relabel(matching_route(local, fi, std::nullopt), vertices, dist);
    return b.cost < a.cost ? b : a;
}

// ---------------------------------------------------------------------------

int ContractedGraph::component_of(Vertex v) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (std::find(components[i].begin(), components[i].end(), v) != components[i].end()) return static_cast<int>(i);
    return -1;
}

ContractedGraph contract_components(const RequiredSets& required, const DistanceMatrix& dist) {
    std::vector<Vertex> verts = required.vertices;
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const VertexPair& e : required.edges) {
        if (e.u == e.v) throw InvalidArgument("contract_components: required edge is a loop");
        verts.push_back(e.u);
        verts.push_back(e.v);
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (auto& [v, nb] : adj) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw InvalidArgument("contract_components: duplicate required edge at vertex " + std::to_string(v));
        if (nb.size() > 2)
            throw InvalidArgument("contract_components: vertex " + std::to_string(v) + " has required degree > 2");
    }
    auto degree = [&](Vertex v) {
        auto it = adj.find(v);
        return it == adj.end() ? std::size_t{0} : it->second.size();
    };

    ContractedGraph cg;
    for (const auto& comp : connected_components(verts, required.edges)) {
        std::size_t edge_count = 0;
        for (Vertex v : comp) edge_count += degree(v);
        if (edge_count / 2 + 1 != comp.size())
            throw InvalidArgument("contract_components: required edges contain a cycle");
        Vertex start = comp.front();
        for (Vertex v : comp)
            if (degree(v) <= 1) {
                start = v;
                break;
            }
        std::vector<Vertex> path{start};
        Vertex prev = -1;
        Vertex cur = start;
        while (path.size() < comp.size()) {
            const auto& nb = adj.at(cur);
            Vertex next = nb[0] != prev ? nb[0] : nb[1];
            path.push_back(next);
            prev = cur;
            cur = next;
        }
        cg.components.push_back(std::move(path));
    }

    const std::size_t m = cg.components.size();
    cg.link_cost = DistanceMatrix(m, 0);
    cg.attachment.assign(m, std::vector<std::pair<Vertex, Vertex>>(m, {-1, -1}));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto& ci = cg.components[i];
            const auto& cj = cg.components[j];
            std::tuple<Cost, Vertex, Vertex> best{kInf, 0, 0};
            std::pair<Vertex, Vertex> at{-1, -1};
            for (Vertex x : {ci.front(), ci.back()})
                for (Vertex y : {cj.front(), cj.back()}) {
                    std::tuple<Cost, Vertex, Vertex> key{dist(x, y), std::min(x, y), std::max(x, y)};
                    if (key < best) {
                        best = key;
                        at = {x, y};
                    }
                }
            cg.link_cost.set(static_cast<Vertex>(i), static_cast<Vertex>(j), std::get<0>(best));
            cg.attachment[i][j] = at;
            cg.attachment[j][i] = {at.second, at.first};
        }
    return cg;
}

namespace {

// Best orientation of each component along a fixed component order.
Walk orient_components(const ContractedGraph& cg, const std::vector<Vertex>& order, const DistanceMatrix& dist,
                       std::optional<Vertex> s, std::optional<Vertex> t) {
    const std::size_t m = order.size();
    auto entry = [&](std::size_t pos, int o) {
        const auto& c = cg.components[order[pos]];
        return o == 0 ? c.front() : c.back();
    };
    auto exit = [&](std::size_t pos, int o) {
        const auto& c = cg.components[order[pos]];
        return o == 0 ? c.back() : c.front();
    };
    auto allowed = [&](std::size_t pos, int o) {
        if (o == 1 && cg.components[order[pos]].size() == 1) return false;
        if (pos == 0 && s && entry(pos, o) != *s) return false;
        if (pos + 1 == m && t && exit(pos, o) != *t) return false;
        return true;
    };

    std::vector<std::array<Cost, 2>> best(m, {kInf, kInf});
    std::vector<std::array<int, 2>> from(m, {-1, -1});
    for (int o = 0; o < 2; ++o)
        if (allowed(0, o)) best[0][o] = 0;
    for (std::size_t pos = 1; pos < m; ++pos)
        for (int o = 0; o < 2; ++o) {
            if (!allowed(pos, o)) continue;
            for (int p = 0; p < 2; ++p) {
                if (best[pos - 1][p] >= kInf) continue;
                Cost c = best[pos - 1][p] + dist(exit(pos - 1, p), entry(pos, o));
                if (c < best[pos][o]) {
                    best[pos][o] = c;
                    from[pos][o] = p;
                }
            }
        }
    int o = best[m - 1][0] <= best[m - 1][1] ? 0 : 1;
    if (best[m - 1][o] >= kInf) throw InvalidArgument("tgpp_path: prescribed ends cannot be honoured");
    std::vector<int> orient(m);
    for (std::size_t pos = m; pos-- > 0;) {
        orient[pos] = o;
        o = from[pos][o];
    }
    std::vector<Vertex> seq;
    for (std::size_t pos = 0; pos < m; ++pos) {
        const auto& c = cg.components[order[pos]];
        if (orient[pos] == 0)
            seq.insert(seq.end(), c.begin(), c.end());
        else
            seq.insert(seq.end(), c.rbegin(), c.rend());
    }
    return make_walk(std::move(seq), false, dist);
}

}  // namespace

Walk tgpp_path(const RequiredSets& required, const DistanceMatrix& dist, std::optional<Vertex> s,
               std::optional<Vertex> t) {
    RequiredSets g = required;
    if (s) g.vertices.push_back(*s);
    if (t) g.vertices.push_back(*t);
    const ContractedGraph cg = contract_components(g, dist);
    if (cg.components.empty()) throw InvalidArgument("tgpp_path: nothing to visit");

    if (s && t && *s == *t) {
        if (cg.components.size() == 1 && cg.components[0].size() == 1) return single_node(*s);
        throw InvalidArgument("tgpp_path: s = t requires that nothing else is required");
    }
    for (auto e : {s, t})
        if (e) {
            const auto& c = cg.components[cg.component_of(*e)];
            if (c.front() != *e && c.back() != *e)
                throw InvalidArgument("tgpp_path: end " + std::to_string(*e) + " is interior to a required path");
        }

    std::optional<Vertex> cs;
    std::optional<Vertex> ct;
    if (s) cs = cg.component_of(*s);
    if (t) ct = cg.component_of(*t);
    const std::size_t m = cg.components.size();
    if (m == 1) return orient_components(cg, {0}, dist, s, t);
    if (cs && ct && *cs == *ct)
        throw InvalidArgument("tgpp_path: s and t close a required path that leaves other content unvisited");

    Walk best;
    bool have = false;
    for (const Walk& route : {tree_doubling_route(cg.link_cost, cs, ct), matching_route(cg.link_cost, cs, ct)}) {
        Walk w = orient_components(cg, route.vertices, dist, s, t);
        if (!have || w.cost < best.cost) {
            best = std::move(w);
            have = true;
        }
    }
    return best;
}

}  // namespace gcrp
