#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>

#include "gcrp/arcrouting.hpp"
#include "gcrp/instance.hpp"
#include "gcrp/pathsolver.hpp"

namespace gcrp {

// Size limits of the exact methods. Exceeding one raises OracleCapExceeded.
struct OracleBudget {
    int tsp_cap = 12;   // vertices for TSP, path TSP and TGPP
    int gcrp_cap = 10;  // instance vertices
    int arc_cap = 6;    // arcs or required edges

    bool operator==(const OracleBudget&) const = default;
};

class OracleCapExceeded : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class OracleCancelled : public Error {
public:
    using Error::Error;
};

struct OracleResult {
    Cost opt_cost = 0;
    Walk witness;
    std::uint64_t nodes_explored = 0;
    OracleBudget budget;
};

// Held-Karp dynamic programs.
OracleResult exact_tsp(std::span<const Vertex> vertices, const DistanceMatrix& dist, const OracleBudget& budget = {},
                       std::stop_token stop = {});
// Both, one or no ends prescribed.
OracleResult exact_tsp_path(std::span<const Vertex> vertices, const DistanceMatrix& dist, std::optional<Vertex> s,
                            std::optional<Vertex> t, const OracleBudget& budget = {}, std::stop_token stop = {});

// Plain permutation enumeration, an independent second route for the two above.
OracleResult exact_tsp_enumerate(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                                 const OracleBudget& budget = {}, std::stop_token stop = {});
OracleResult exact_tsp_path_enumerate(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                                      std::optional<Vertex> s, std::optional<Vertex> t,
                                      const OracleBudget& budget = {}, std::stop_token stop = {});

// Shortest open walk that visits every required vertex once and traverses
// every required edge, with optional fixed ends.
OracleResult exact_tgpp(const RequiredSets& required, const DistanceMatrix& dist, std::optional<Vertex> s,
                        std::optional<Vertex> t, const OracleBudget& budget = {}, std::stop_token stop = {});

// Optimal cluster-consecutive tour over the required content (each content
// vertex once), by a subset dynamic program. Throws InfeasibleInstance.
OracleResult exact_gcrp(const MetricInstance& inst, const OracleBudget& budget = {}, std::stop_token stop = {});

// Same optimum by enumerating every ordering of the content and keeping the
// ones check_tour accepts. Much slower.
OracleResult exact_gcrp_enumerate(const MetricInstance& inst, const OracleBudget& budget = {},
                                  std::stop_token stop = {});

// Optimal closed walks through the special arcs (in their direction for
// SCP, either direction for RPP), by enumeration of arc orders.
OracleResult exact_scp(const ArcTask& task, const DistanceMatrix& dist, const OracleBudget& budget = {},
                       std::stop_token stop = {});
OracleResult exact_rpp(const ArcTask& task, const DistanceMatrix& dist, const OracleBudget& budget = {},
                       std::stop_token stop = {});

}  // namespace gcrp
