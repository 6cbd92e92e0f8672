#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcrp/arcrouting.hpp"
#include "gcrp/instance.hpp"

namespace gcrp {

enum class Algorithm { Alg2, Alg3T1, Alg3T2, Alg4, TsppCase };

std::string to_string(Algorithm a);

// Solver family requested by a caller; Auto follows the instance's case.
enum class SolverChoice { Auto, Alg2, Alg3, Alg4 };

std::string to_string(SolverChoice c);
std::optional<SolverChoice> parse_solver_choice(std::string_view text);

// The requested solver does not handle the instance's case.
class DispatchError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Path used inside one cluster.
struct ClusterPath {
    int cluster = 0;
    Vertex start = 0;
    Vertex end = 0;
    Walk path;

    bool operator==(const ClusterPath&) const = default;
};

struct GcrpSolution {
    Walk tour;                              // closed
    std::vector<ClusterPath> per_cluster;   // clusters with required content, by index
    BoundsLedger ledger;
    Algorithm algorithm = Algorithm::Alg2;
    // Cost of every candidate tour the solver compared.
    std::vector<std::pair<Algorithm, Cost>> candidates;

    bool operator==(const GcrpSolution&) const = default;
};

// Specified-ends instance with clusters chained by (t_i, s_j) required edges
// merged into super-clusters.
struct PreshrinkResult {
    MetricInstance reduced;
    std::vector<ClusterChain> chains;  // chains[j] became cluster j of `reduced`
};

PreshrinkResult preshrink_cross_edges(const MetricInstance& inst);

GcrpSolution solve_specified(const MetricInstance& inst);
GcrpSolution solve_unspecified_intra(const MetricInstance& inst);
GcrpSolution solve_unspecified_cross(const MetricInstance& inst);

// Classifies, rejects infeasible instances (InfeasibleInstance) and
// dispatches. A choice that does not fit the case raises DispatchError.
GcrpSolution solve(const MetricInstance& inst, SolverChoice choice = SolverChoice::Auto);

// Problems with a tour as a solution of `inst`; empty means valid.
// Checks: closed walk with the recorded cost, each required vertex exactly
// once, each required edge as consecutive positions, every cluster's
// visits contiguous, and specified ends opening and closing their cluster's
// block (in one common direction).
std::vector<std::string> check_tour(const MetricInstance& inst, const Walk& tour);

// L = length of the tour inside cluster blocks, A = cost - L. The tour is
// read from its first position, so a single-cluster tour loses its closing
// edge to A.
BoundsLedger ledger_from_reference(const MetricInstance& inst, const Walk& reference);

}  // namespace gcrp
