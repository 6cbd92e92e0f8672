#include "gcrp/graphkit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace gcrp {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

// Maps arbitrary vertex ids onto 0..m-1.
class VertexIndex {
public:
    template <typename Range>
    explicit VertexIndex(const Range& vertices) : ids_(vertices.begin(), vertices.end()) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }
    void add(Vertex v) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
        if (it == ids_.end() || *it != v) ids_.insert(it, v);
    }
    std::size_t size() const { return ids_.size(); }
    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
    std::size_t operator[](Vertex v) const {
        return static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), v) - ids_.begin());
    }
    Vertex id(std::size_t i) const { return ids_[i]; }

private:
    std::vector<Vertex> ids_;
};

VertexIndex index_multigraph(const Multigraph& g, Vertex s, Vertex t) {
    VertexIndex index(g.vertices);
    for (const Edge& e : g.edges) {
        index.add(e.u);
        index.add(e.v);
    }
    index.add(s);
    index.add(t);
    return index;
}

}  // namespace

SpanningTree minimum_spanning_tree(std::span<const Vertex> vertices, const DistanceMatrix& dist) {
    if (vertices.empty()) throw InvalidArgument("minimum_spanning_tree: empty vertex set");
    const std::size_t m = vertices.size();
    std::vector<std::tuple<Cost, Vertex, Vertex, std::size_t, std::size_t>> candidates;
    candidates.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vertex a = std::min(vertices[i], vertices[j]);
            Vertex b = std::max(vertices[i], vertices[j]);
            candidates.emplace_back(dist(a, b), a, b, i, j);
        }
    std::sort(candidates.begin(), candidates.end());

    SpanningTree tree;
    DisjointSets sets(m);
    for (const auto& [c, a, b, i, j] : candidates) {
        if (!sets.unite(i, j)) continue;
        tree.edges.push_back({a, b, c});
        tree.cost += c;
        if (tree.edges.size() + 1 == m) break;
    }
    return tree;
}

EulerTrail eulerian_walk(const Multigraph& g, Vertex s, Vertex t) {
    const VertexIndex index = index_multigraph(g, s, t);
    const std::size_t m = index.size();
    std::vector<std::vector<std::size_t>> incident(m);
    std::vector<int> degree(m, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        std::size_t a = index[g.edges[e].u];
        std::size_t b = index[g.edges[e].v];
        incident[a].push_back(e);
        degree[a] += 1;
        if (a != b) incident[b].push_back(e);
        degree[b] += 1;
    }
    for (std::size_t x = 0; x < m; ++x) {
        Vertex v = index.id(x);
        bool should_be_odd = (s != t) && (v == s || v == t);
        if ((degree[x] % 2 == 1) != should_be_odd)
            throw GraphError("eulerian_walk: degree parity violated at vertex " + std::to_string(v));
    }

    std::vector<bool> used(g.edges.size(), false);
    std::vector<std::size_t> cursor(m, 0);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{index[s], kNone}};
    std::vector<std::pair<std::size_t, std::size_t>> out;
    while (!stack.empty()) {
        std::size_t x = stack.back().first;
        auto& cur = cursor[x];
        while (cur < incident[x].size() && used[incident[x][cur]]) ++cur;
        if (cur == incident[x].size()) {
            out.push_back(stack.back());
            stack.pop_back();
            continue;
        }
        std::size_t e = incident[x][cur];
        used[e] = true;
        std::size_t a = index[g.edges[e].u];
        std::size_t y = (a == x) ? index[g.edges[e].v] : a;
        stack.emplace_back(y, e);
    }
    if (out.size() != g.edges.size() + 1)
        throw GraphError("eulerian_walk: edge set is not connected to the start vertex");

    std::reverse(out.begin(), out.end());
    EulerTrail trail;
    trail.vertices.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        trail.vertices.push_back(index.id(out[i].first));
        if (i > 0) trail.edges.push_back(out[i].second);
    }
    return trail;
}

EulerTrail directed_eulerian_circuit(const Multigraph& g, Vertex start) {
    const VertexIndex index = index_multigraph(g, start, start);
    const std::size_t m = index.size();
    std::vector<std::vector<std::size_t>> outgoing(m);
    std::vector<int> balance(m, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        std::size_t a = index[g.edges[e].u];
        std::size_t b = index[g.edges[e].v];
        outgoing[a].push_back(e);
        balance[a] += 1;
        balance[b] -= 1;
    }
    for (std::size_t x = 0; x < m; ++x)
        if (balance[x] != 0)
            throw GraphError("directed_eulerian_circuit: unbalanced vertex " + std::to_string(index.id(x)));

    std::vector<std::size_t> cursor(m, 0);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{index[start], kNone}};
    std::vector<std::pair<std::size_t, std::size_t>> out;
    while (!stack.empty()) {
        std::size_t x = stack.back().first;
        if (cursor[x] == outgoing[x].size()) {
            out.push_back(stack.back());
            stack.pop_back();
            continue;
        }
        std::size_t e = outgoing[x][cursor[x]++];
        stack.emplace_back(index[g.edges[e].v], e);
    }
    if (out.size() != g.edges.size() + 1)
        throw GraphError("directed_eulerian_circuit: arcs are not connected to the start vertex");

    std::reverse(out.begin(), out.end());
    EulerTrail trail;
    for (std::size_t i = 0; i < out.size(); ++i) {
        trail.vertices.push_back(index.id(out[i].first));
        if (i > 0) trail.edges.push_back(out[i].second);
    }
    return trail;
}

Walk shortcut(const Walk& walk, std::span<const Vertex> keep_once, const DistanceMatrix& dist,
              std::span<const VertexPair> protected_edges) {
    const auto& seq = walk.vertices;
    const std::size_t n = seq.size();
    if (n == 0) return walk;

    std::vector<Vertex> keep(keep_once.begin(), keep_once.end());
    std::sort(keep.begin(), keep.end());
    std::set<VertexPair> guarded(protected_edges.begin(), protected_edges.end());
    auto is_keep = [&](Vertex v) { return std::binary_search(keep.begin(), keep.end(), v); };
    auto guarded_step = [&](std::size_t i, std::size_t j) {
        return !guarded.empty() && guarded.count(VertexPair(seq[i], seq[j])) > 0;
    };

    const bool open = !walk.closed;
    const Vertex last = seq.back();
    std::set<Vertex> seen;
    std::vector<Vertex> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = seq[i];
        if (!is_keep(v)) {
            out.push_back(v);
            continue;
        }
        bool pinned_last = open && (i + 1 == n || i == 0);
        bool protected_here = false;
        if (i > 0) protected_here = protected_here || guarded_step(i - 1, i);
        if (i + 1 < n) protected_here = protected_here || guarded_step(i, i + 1);
        if (walk.closed && n > 1 && (i == 0 || i + 1 == n))
            protected_here = protected_here || guarded_step(n - 1, 0);
        bool duplicate = seen.count(v) > 0 || (open && v == last && !pinned_last);
        if (duplicate && !pinned_last && !protected_here) continue;
        out.push_back(v);
        seen.insert(v);
    }
    return make_walk(std::move(out), walk.closed, dist);
}

std::vector<std::vector<Vertex>> connected_components(std::span<const Vertex> vertices,
                                                      std::span<const VertexPair> edges) {
    VertexIndex index(vertices);
    for (const VertexPair& e : edges) {
        index.add(e.u);
        index.add(e.v);
    }
    DisjointSets sets(index.size());
    for (const VertexPair& e : edges) sets.unite(index[e.u], index[e.v]);

    std::vector<std::vector<Vertex>> by_root(index.size());
    for (std::size_t x = 0; x < index.size(); ++x) by_root[sets.find(x)].push_back(index.id(x));
    std::vector<std::vector<Vertex>> components;
    for (auto& c : by_root)
        if (!c.empty()) components.push_back(std::move(c));
    std::sort(components.begin(), components.end());
    return components;
}

}  // namespace gcrp
