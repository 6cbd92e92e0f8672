#pragma once

#include <span>
#include <vector>

#include "gcrp/types.hpp"

namespace gcrp {

// Parity or connectivity preconditions of a graph routine do not hold.
class GraphError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct SpanningTree {
    std::vector<Edge> edges;
    Cost cost = 0;
};

// Kruskal over the complete graph on `vertices`. Ties are broken by the
// lexicographic order of (cost, min endpoint, max endpoint).
SpanningTree minimum_spanning_tree(std::span<const Vertex> vertices, const DistanceMatrix& dist);

struct Matching {
    std::vector<Edge> edges;
    Cost cost = 0;
};

// Exact minimum-weight perfect matching of the complete graph on `vertices`
// (Edmonds' blossom algorithm). Requires an even number of vertices.
Matching min_weight_perfect_matching(std::span<const Vertex> vertices, const DistanceMatrix& dist);

// Maximum-weight matching over an explicit edge list on vertices 0..n-1.
// With `max_cardinality`, the maximum weight among maximum-cardinality
// matchings. Returns mate[v] (or -1).
std::vector<Vertex> max_weight_matching(int n, std::span<const Edge> edges, bool max_cardinality);

struct Multigraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;  // parallel edges allowed
};

struct EulerTrail {
    std::vector<Vertex> vertices;     // edges.size() + 1 entries
    std::vector<std::size_t> edges;   // indices into Multigraph::edges
};

// Trail from s to t using every edge exactly once. Odd-degree vertices must
// be exactly {s, t} (none when s == t) and all edges must be connected to s.
EulerTrail eulerian_walk(const Multigraph& g, Vertex s, Vertex t);

// Directed counterpart: every edge u->v used once, starting and ending at
// `start`. In-degree must equal out-degree everywhere.
EulerTrail directed_eulerian_circuit(const Multigraph& g, Vertex start);

// Left-to-right shortcut: later occurrences of `keep_once` vertices are
// dropped, except that an open walk keeps its first and last positions
// and no vertex adjacent (in the walk) to a protected step is ever dropped.
// Vertices outside `keep_once` are kept as they are. Under a metric the cost
// never increases.
Walk shortcut(const Walk& walk, std::span<const Vertex> keep_once, const DistanceMatrix& dist,
              std::span<const VertexPair> protected_edges = {});

// Components of (vertices, edges); isolated vertices form singletons.
// Components are listed by smallest member and are sorted internally.
std::vector<std::vector<Vertex>> connected_components(std::span<const Vertex> vertices,
                                                      std::span<const VertexPair> edges);

struct Assignment {
    std::vector<int> column_of_row;
    Cost cost = 0;
};

// Hungarian method on a square cost matrix.
Assignment solve_assignment(const std::vector<std::vector<Cost>>& cost);

}  // namespace gcrp
