#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gcrp/types.hpp"

namespace gcrp {

// Special arc (tail -> head). Undirected tasks read it as an edge. A zero
// length arc (tail == head) only asks for a visit of that vertex.
struct Arc {
    Vertex tail = 0;
    Vertex head = 0;
    Cost length = 0;

    bool operator==(const Arc&) const = default;
};

struct ArcTask {
    std::vector<Arc> arcs;
    bool directed = true;

    Cost total_length() const;
};

// Fills in arc lengths from the metric.
ArcTask make_arc_task(const std::vector<std::pair<Vertex, Vertex>>& arcs, bool directed, const DistanceMatrix& dist);

// Quantities of the ratio analysis for one solve. The solver fills what it
// knows (D); the oracle side fills the rest.
struct BoundsLedger {
    std::optional<Cost> L;
    std::optional<Cost> A;
    std::optional<Cost> D;
    std::optional<Cost> opt_ref;

    bool operator==(const BoundsLedger&) const = default;
};

// A closed route through the special arcs: arcs are taken in `order`, arc
// order[j] backwards when reversed[j] (never for directed tasks), with direct
// metric moves in between. `walk` is the resulting compact closed walk.
struct ArcRoute {
    std::vector<int> order;
    std::vector<bool> reversed;
    Walk walk;

    bool operator==(const ArcRoute&) const = default;
};

// Builds the closed walk and its cost for a given arc order.
ArcRoute make_arc_route(const ArcTask& task, std::vector<int> order, std::vector<bool> reversed,
                        const DistanceMatrix& dist);

// True if the walk traverses the arc (consecutive positions, cyclically;
// oriented for directed tasks). A zero-length arc only needs a visit.
bool walk_traverses(const Walk& walk, const Arc& arc, bool directed);

struct CycleCover {
    // successor[i]: the arc taken after arc i.
    std::vector<int> successor;
    std::vector<std::vector<int>> cycles;  // arc indices in travel order
    Cost connector_cost = 0;               // sum of dist(head_i, tail_successor)
};

// Minimum-cost way to chain arc heads to arc tails into directed cycles
// (an assignment problem).
CycleCover directed_cycle_cover(const std::vector<Arc>& arcs, const DistanceMatrix& dist);

// Stacker crane: every arc traversed in its direction.
ArcRoute scp_short_arcs(const ArcTask& task, const DistanceMatrix& dist);
ArcRoute scp_long_arcs(const ArcTask& task, const DistanceMatrix& dist);
ArcRoute scp_solve(const ArcTask& task, const DistanceMatrix& dist);

// Rural postman: every edge traversed in either direction.
ArcRoute rpp_short_arcs(const ArcTask& task, const DistanceMatrix& dist);
ArcRoute rpp_long_arcs(const ArcTask& task, const DistanceMatrix& dist);
ArcRoute rpp_solve(const ArcTask& task, const DistanceMatrix& dist);

}  // namespace gcrp
