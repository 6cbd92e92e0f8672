#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcrp/types.hpp"

namespace gcrp {

// Closed Hamiltonian cycle by MST + minimum matching on odd vertices +
// Euler circuit + shortcut. A single vertex gives the trivial walk.
Walk christofides(std::span<const Vertex> vertices, const DistanceMatrix& dist);

// The two s-t Hamiltonian paths of the fixed-ends construction:
// s1 doubles the MST except the tree path from s to t, s2 adds a minimum
// matching on the vertices whose parity is wrong for an s-t trail.
struct PathPair {
    Walk s1;
    Walk s2;
    Walk chosen;  // the cheaper; s1 on ties
};

PathPair hoogeveen_fixed_ends(std::span<const Vertex> vertices, const DistanceMatrix& dist, Vertex s, Vertex t);

// Hamiltonian path with at most one prescribed end. The cheaper of the
// tree-doubling path and the matching path (unmatched ends become the free
// path ends).
Walk hoogeveen_free_ends(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                         std::optional<Vertex> fixed_end = std::nullopt);

// Node orders for a complete graph on 0..m-1 with costs `cost`, optionally
// pinning the first and/or last node. Returned walks are open and cost is
// measured in `cost`.
Walk tree_doubling_route(const DistanceMatrix& cost, std::optional<Vertex> first, std::optional<Vertex> last);
Walk matching_route(const DistanceMatrix& cost, std::optional<Vertex> first, std::optional<Vertex> last);

// Required content of a path problem: vertices to visit once, and edges to
// traverse. The edges must form vertex-disjoint simple paths.
struct RequiredSets {
    std::vector<Vertex> vertices;
    std::vector<VertexPair> edges;
};

// Components of the required graph contracted to super-vertices. Links are
// realized between component ends (vertices of required degree 0 or 1) using
// the shortest such link; ties go to the smallest vertex pair.
struct ContractedGraph {
    // Each component listed in the order of its required path, starting from
    // its smaller end.
    std::vector<std::vector<Vertex>> components;
    DistanceMatrix link_cost;
    // attachment[i][j] = (x, y) with x an end of component i, y an end of j.
    std::vector<std::vector<std::pair<Vertex, Vertex>>> attachment;

    int component_of(Vertex v) const;
};

// Throws InvalidArgument when the required edges contain a cycle or a vertex
// of degree above 2.
ContractedGraph contract_components(const RequiredSets& required, const DistanceMatrix& dist);

// Open walk visiting every required vertex once and traversing every required
// edge, from s to t when these are given. Fixed ends are added to the
// required vertices. Throws InvalidArgument when no such path exists.
Walk tgpp_path(const RequiredSets& required, const DistanceMatrix& dist, std::optional<Vertex> s,
               std::optional<Vertex> t);

}  // namespace gcrp
