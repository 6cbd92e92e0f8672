#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcrp/types.hpp"

namespace gcrp {

// Entry and exit vertex prescribed for one cluster.
struct ClusterEnds {
    Vertex start = 0;
    Vertex end = 0;

    bool operator==(const ClusterEnds&) const = default;
};

// General cluster routing instance over a complete metric graph.
//
// Construct through make_instance(), which sorts cluster member lists,
// required vertices and required edges so that equal instances compare equal
// and serialize identically.
struct MetricInstance {
    DistanceMatrix dist;
    std::vector<std::vector<Vertex>> clusters;
    std::vector<Vertex> required_vertices;
    std::vector<VertexPair> required_edges;
    // Either absent, or one entry per cluster.
    std::optional<std::vector<ClusterEnds>> ends;

    std::size_t size() const { return dist.size(); }
    std::size_t cluster_count() const { return clusters.size(); }
    bool has_ends() const { return ends.has_value(); }

    bool operator==(const MetricInstance&) const = default;
};

MetricInstance make_instance(DistanceMatrix dist, std::vector<std::vector<Vertex>> clusters,
                             std::vector<Vertex> required_vertices,
                             std::vector<VertexPair> required_edges,
                             std::optional<std::vector<ClusterEnds>> ends = std::nullopt);

// ---------------------------------------------------------------------------
// Metric validation

struct MetricViolation {
    enum class Kind {
        Shape,
        NonzeroDiagonal,
        NonPositive,
        Asymmetric,
        Triangle,
        Partition,
        EndpointOutsideCluster,
        EdgeEndpoint,
        RequiredVertex,
    };
    Kind kind;
    // Offending vertices: pair for Asymmetric/NonPositive, triple (a,b,c)
    // meaning dist(a,c) > dist(a,b) + dist(b,c) for Triangle.
    std::vector<Vertex> at;
    std::string detail;

    bool operator==(const MetricViolation&) const = default;
};

std::string to_string(MetricViolation::Kind kind);

std::vector<MetricViolation> validate_metric(const MetricInstance& inst);

// ---------------------------------------------------------------------------
// Required-content layout

// Derived view of the required vertices and edges, shared by the feasibility
// classifier, the solvers and the oracle.
struct RequiredLayout {
    std::vector<int> cluster_of;                     // vertex -> cluster index
    std::vector<std::vector<Vertex>> neighbours;     // required-edge neighbours per vertex
    std::vector<bool> is_required_vertex;            // membership in V'
    std::vector<VertexPair> cross_edges;             // endpoints in different clusters
    std::vector<std::vector<VertexPair>> internal_edges;  // per cluster
    // Per cluster: endpoints of internal required edges, required vertices,
    // specified ends and endpoints of incident cross edges. Sorted.
    std::vector<std::vector<Vertex>> content;
    // Per cluster: one entry per incident cross edge (the endpoint inside the cluster).
    std::vector<std::vector<Vertex>> attachments;

    int required_degree(Vertex v) const { return static_cast<int>(neighbours[v].size()); }
    int internal_degree(Vertex v) const;
    bool has_content(int cluster) const { return !content[cluster].empty(); }
    std::vector<Vertex> all_content() const;
};

RequiredLayout analyze_required(const MetricInstance& inst);

// Clusters joined by cross-cluster required edges, in travel order. Only
// clusters with required content take part; a cluster without cross edges
// forms a chain on its own.
struct ClusterChain {
    std::vector<int> clusters;
    // links[j] = (exit vertex of clusters[j], entry vertex of the next
    // cluster). A cyclic chain has a closing link from the last cluster back
    // to the first.
    std::vector<std::pair<Vertex, Vertex>> links;
    bool cyclic = false;

    bool operator==(const ClusterChain&) const = default;
};

// Empty optional when some cluster meets more than two cross edges or, with
// specified ends, a chain cannot be ordered as (t_i, s_j) links.
std::optional<std::vector<ClusterChain>> build_cluster_chains(const MetricInstance& inst,
                                                             const RequiredLayout& layout);

// ---------------------------------------------------------------------------
// Feasibility

enum class FeasibilityStatus { Feasible, InfeasibleCrossEdge, InfeasibleDegree, InfeasibleStructure };
enum class CaseTag { SpecifiedEnds, UnspecifiedIntraOnly, UnspecifiedWithCrossEdges };

std::string to_string(FeasibilityStatus status);
std::string to_string(CaseTag tag);

struct FeasibilityVerdict {
    FeasibilityStatus status = FeasibilityStatus::Feasible;
    CaseTag case_tag = CaseTag::UnspecifiedIntraOnly;
    int cross_edge_count = 0;
    std::optional<Vertex> witness_vertex;
    std::optional<VertexPair> witness_edge;
    std::string reason;

    bool feasible() const { return status == FeasibilityStatus::Feasible; }
    std::string describe() const;
    bool operator==(const FeasibilityVerdict&) const = default;
};

// Precondition: validate_metric(inst) is empty.
FeasibilityVerdict classify(const MetricInstance& inst);

// Raised by solvers and the oracle for instances that classify() rejects.
class InfeasibleInstance : public Error {
public:
    explicit InfeasibleInstance(FeasibilityVerdict verdict)
        : Error("infeasible instance: " + verdict.describe()), verdict_(std::move(verdict)) {}
    const FeasibilityVerdict& verdict() const { return verdict_; }

private:
    FeasibilityVerdict verdict_;
};

// ---------------------------------------------------------------------------
// Cluster subgraphs

struct ClusterSubgraph {
    int cluster = 0;
    std::vector<Vertex> vertices;    // sorted
    std::vector<VertexPair> edges;   // required edges with both endpoints in the cluster

    bool operator==(const ClusterSubgraph&) const = default;
};

std::vector<ClusterSubgraph> build_cluster_subgraphs(const MetricInstance& inst);

// ---------------------------------------------------------------------------
// Random instances

enum class EndpointsMode { Given, Free };
// Which required edges the generator may draw.
enum class CrossPolicy { None, Any, AtLeastOne };

struct GeneratorParams {
    int n = 6;
    int k = 2;
    double frac_required_v = 0.5;
    double frac_required_e = 0.2;
    EndpointsMode endpoints = EndpointsMode::Free;
    CrossPolicy cross = CrossPolicy::Any;
    int coordinate_box = 1000;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

MetricInstance generate_random(const GeneratorParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Text format

class ParseError : public Error {
public:
    enum class Kind { Header, Malformed, Dimension, Range, Partition, Endpoint, Missing };
    ParseError(Kind kind, int line, const std::string& message);
    Kind kind() const { return kind_; }
    int line() const { return line_; }

private:
    Kind kind_;
    int line_;
};

MetricInstance parse_instance(std::string_view text);
std::string serialize_instance(const MetricInstance& inst);

}  // namespace gcrp
