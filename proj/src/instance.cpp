#include "gcrp/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gcrp/graphkit.hpp"

namespace gcrp {

namespace {

void sort_unique(std::vector<Vertex>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string pair_text(VertexPair e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

}  // namespace

MetricInstance make_instance(DistanceMatrix dist, std::vector<std::vector<Vertex>> clusters,
                             std::vector<Vertex> required_vertices, std::vector<VertexPair> required_edges,
                             std::optional<std::vector<ClusterEnds>> ends) {
    MetricInstance inst;
    inst.dist = std::move(dist);
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    inst.clusters = std::move(clusters);
    sort_unique(required_vertices);
    inst.required_vertices = std::move(required_vertices);
    std::sort(required_edges.begin(), required_edges.end());
    required_edges.erase(std::unique(required_edges.begin(), required_edges.end()), required_edges.end());
    inst.required_edges = std::move(required_edges);
    inst.ends = std::move(ends);
    return inst;
}

std::string to_string(MetricViolation::Kind kind) {
    switch (kind) {
        case MetricViolation::Kind::Shape: return "shape";
        case MetricViolation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
        case MetricViolation::Kind::NonPositive: return "non-positive";
        case MetricViolation::Kind::Asymmetric: return "asymmetric";
        case MetricViolation::Kind::Triangle: return "triangle";
        case MetricViolation::Kind::Partition: return "partition";
        case MetricViolation::Kind::EndpointOutsideCluster: return "endpoint-outside-cluster";
        case MetricViolation::Kind::EdgeEndpoint: return "edge-endpoint";
        case MetricViolation::Kind::RequiredVertex: return "required-vertex";
    }
    return "unknown";
}

std::vector<MetricViolation> validate_metric(const MetricInstance& inst) {
    using Kind = MetricViolation::Kind;
    std::vector<MetricViolation> out;
    const auto& d = inst.dist;
    const int n = static_cast<int>(d.size());
    auto in_range = [n](Vertex v) { return v >= 0 && v < n; };

    for (int u = 0; u < n; ++u)
        if (d(u, u) != 0) out.push_back({Kind::NonzeroDiagonal, {u}, "dist(u,u) must be 0"});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (d(u, v) != d(v, u)) out.push_back({Kind::Asymmetric, {u, v}, "dist(u,v) != dist(v,u)"});
            if (d(u, v) <= 0 || d(v, u) <= 0)
                out.push_back({Kind::NonPositive, {u, v}, "off-diagonal distance must be positive"});
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            for (int c = a + 1; c < n; ++c) {
                if (c == b) continue;
                if (d(a, c) > d(a, b) + d(b, c))
                    out.push_back({Kind::Triangle, {a, b, c}, "dist(a,c) > dist(a,b) + dist(b,c)"});
            }
        }

    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < inst.clusters.size(); ++i) {
        if (inst.clusters[i].empty())
            out.push_back({Kind::Partition, {static_cast<Vertex>(i)}, "cluster " + std::to_string(i) + " is empty"});
        for (Vertex v : inst.clusters[i]) {
            if (!in_range(v))
                out.push_back({Kind::Partition, {v}, "cluster member out of range"});
            else
                seen[v] += 1;
        }
    }
    for (int v = 0; v < n; ++v)
        if (seen[v] != 1)
            out.push_back({Kind::Partition, {v},
                           "vertex appears in " + std::to_string(seen[v]) + " clusters, expected exactly 1"});

    if (inst.ends) {
        if (inst.ends->size() != inst.clusters.size()) {
            out.push_back({Kind::EndpointOutsideCluster, {}, "ends must be given for every cluster or none"});
        } else {
            for (std::size_t i = 0; i < inst.clusters.size(); ++i) {
                const auto& c = inst.clusters[i];
                for (Vertex x : {(*inst.ends)[i].start, (*inst.ends)[i].end})
                    if (std::find(c.begin(), c.end(), x) == c.end())
                        out.push_back({Kind::EndpointOutsideCluster, {x},
                                       "endpoint not in cluster " + std::to_string(i)});
            }
        }
    }
    for (const VertexPair& e : inst.required_edges)
        if (!in_range(e.u) || !in_range(e.v) || e.u == e.v)
            out.push_back({Kind::EdgeEndpoint, {e.u, e.v}, "required edge endpoints must be distinct vertices"});
    for (Vertex v : inst.required_vertices)
        if (!in_range(v)) out.push_back({Kind::RequiredVertex, {v}, "required vertex out of range"});
    return out;
}

// ---------------------------------------------------------------------------

int RequiredLayout::internal_degree(Vertex v) const {
    int count = 0;
    for (Vertex w : neighbours[v])
        if (cluster_of[w] == cluster_of[v]) ++count;
    return count;
}

std::vector<Vertex> RequiredLayout::all_content() const {
    std::vector<Vertex> all;
    for (const auto& c : content) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    return all;
}

RequiredLayout analyze_required(const MetricInstance& inst) {
    const std::size_t n = inst.size();
    const std::size_t k = inst.cluster_count();
    RequiredLayout layout;
    layout.cluster_of.assign(n, -1);
    for (std::size_t i = 0; i < k; ++i)
        for (Vertex v : inst.clusters[i]) layout.cluster_of[v] = static_cast<int>(i);
    layout.neighbours.assign(n, {});
    layout.is_required_vertex.assign(n, false);
    layout.internal_edges.assign(k, {});
    layout.content.assign(k, {});
    layout.attachments.assign(k, {});

    for (Vertex v : inst.required_vertices) {
        layout.is_required_vertex[v] = true;
        layout.content[layout.cluster_of[v]].push_back(v);
    }
    for (const VertexPair& e : inst.required_edges) {
        layout.neighbours[e.u].push_back(e.v);
        layout.neighbours[e.v].push_back(e.u);
        const int cu = layout.cluster_of[e.u];
        const int cv = layout.cluster_of[e.v];
        layout.content[cu].push_back(e.u);
        layout.content[cv].push_back(e.v);
        if (cu == cv) {
            layout.internal_edges[cu].push_back(e);
        } else {
            layout.cross_edges.push_back(e);
            layout.attachments[cu].push_back(e.u);
            layout.attachments[cv].push_back(e.v);
        }
    }
    if (inst.ends)
        for (std::size_t i = 0; i < k; ++i) {
            layout.content[i].push_back((*inst.ends)[i].start);
            layout.content[i].push_back((*inst.ends)[i].end);
        }
    for (auto& c : layout.content) sort_unique(c);
    for (auto& a : layout.attachments) std::sort(a.begin(), a.end());
    for (auto& nb : layout.neighbours) std::sort(nb.begin(), nb.end());
    return layout;
}

// ---------------------------------------------------------------------------

std::string to_string(FeasibilityStatus status) {
    switch (status) {
        case FeasibilityStatus::Feasible: return "Feasible";
        case FeasibilityStatus::InfeasibleCrossEdge: return "InfeasibleCrossEdge";
        case FeasibilityStatus::InfeasibleDegree: return "InfeasibleDegree";
        case FeasibilityStatus::InfeasibleStructure: return "InfeasibleStructure";
    }
    return "unknown";
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::SpecifiedEnds: return "SpecifiedEnds";
        case CaseTag::UnspecifiedIntraOnly: return "UnspecifiedIntraOnly";
        case CaseTag::UnspecifiedWithCrossEdges: return "UnspecifiedWithCrossEdges";
    }
    return "unknown";
}

std::string FeasibilityVerdict::describe() const {
    std::ostringstream os;
    os << to_string(status) << " case=" << to_string(case_tag) << " crossEdges=" << cross_edge_count;
    if (witness_vertex) os << " witnessVertex=" << *witness_vertex;
    if (witness_edge) os << " witnessEdge=" << pair_text(*witness_edge);
    if (!reason.empty()) os << " (" << reason << ")";
    return os.str();
}

namespace {

// Component of `v` among the cluster's content under internal required edges.
const std::vector<Vertex>* component_of(const std::vector<std::vector<Vertex>>& comps, Vertex v) {
    for (const auto& c : comps)
        if (std::binary_search(c.begin(), c.end(), v)) return &c;
    return nullptr;
}

// Two distinct path ends a, b of one cluster can only frame a Hamiltonian
// path of the cluster if they do not close off a component that leaves
// other content outside.
bool ends_compatible(const std::vector<std::vector<Vertex>>& comps, Vertex a, Vertex b) {
    if (a == b) return comps.size() == 1 && comps.front().size() == 1;
    const auto* ca = component_of(comps, a);
    const auto* cb = component_of(comps, b);
    if (ca == nullptr || cb == nullptr) return false;
    return ca != cb || comps.size() == 1;
}

FeasibilityVerdict infeasible(FeasibilityVerdict v, FeasibilityStatus status, std::string reason) {
    v.status = status;
    v.reason = std::move(reason);
    return v;
}

}  // namespace

FeasibilityVerdict classify(const MetricInstance& inst) {
    const RequiredLayout layout = analyze_required(inst);
    const int n = static_cast<int>(inst.size());
    const int k = static_cast<int>(inst.cluster_count());

    FeasibilityVerdict verdict;
    verdict.cross_edge_count = static_cast<int>(layout.cross_edges.size());
    if (inst.ends)
        verdict.case_tag = CaseTag::SpecifiedEnds;
    else
        verdict.case_tag =
            layout.cross_edges.empty() ? CaseTag::UnspecifiedIntraOnly : CaseTag::UnspecifiedWithCrossEdges;

    for (Vertex v = 0; v < n; ++v)
        if (layout.required_degree(v) > 2) {
            verdict.witness_vertex = v;
            return infeasible(verdict, FeasibilityStatus::InfeasibleDegree,
                              "vertex has required degree " + std::to_string(layout.required_degree(v)));
        }

    if (inst.ends) {
        const auto& ends = *inst.ends;
        for (const VertexPair& e : layout.cross_edges) {
            const int cu = layout.cluster_of[e.u];
            const int cv = layout.cluster_of[e.v];
            bool forward = e.u == ends[cu].end && e.v == ends[cv].start;
            bool backward = e.v == ends[cv].end && e.u == ends[cu].start;
            if (!forward && !backward) {
                verdict.witness_edge = e;
                return infeasible(verdict, FeasibilityStatus::InfeasibleCrossEdge,
                                  "cross-cluster required edge is not a (t_i, s_j) edge");
            }
        }
    }

    {
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const VertexPair& e : inst.required_edges) {
            int a = find(e.u);
            int b = find(e.v);
            if (a == b) {
                verdict.witness_edge = e;
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  "required edges contain a cycle");
            }
            parent[b] = a;
        }
    }

    // Per-cluster framing: the entry and exit vertices must be ends of the
    // cluster's required paths.
    std::vector<std::vector<std::vector<Vertex>>> comps(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comps[i] = connected_components(layout.content[i], layout.internal_edges[i]);

    if (inst.ends) {
        const auto& ends = *inst.ends;
        for (int i = 0; i < k; ++i) {
            const Vertex s = ends[i].start;
            const Vertex t = ends[i].end;
            for (Vertex x : {s, t})
                if (layout.internal_degree(x) > 1) {
                    verdict.witness_vertex = x;
                    return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                      "cluster endpoint is interior to a required path");
                }
            if (s == t && layout.content[i].size() > 1) {
                verdict.witness_vertex = s;
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  "s_i = t_i but the cluster has other required content");
            }
            if (s != t && !ends_compatible(comps[i], s, t)) {
                verdict.witness_vertex = s;
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  "s_i and t_i close a required path that leaves other content unvisited");
            }
            // Cross edges at s_i must enter, at t_i must leave; at most one each.
            int incoming = 0;
            int outgoing = 0;
            for (const VertexPair& e : layout.cross_edges) {
                for (Vertex x : {e.u, e.v}) {
                    if (layout.cluster_of[x] != i) continue;
                    if (s == t) {
                        ++incoming;
                    } else if (x == s) {
                        ++incoming;
                    } else {
                        ++outgoing;
                    }
                }
            }
            if ((s != t && (incoming > 1 || outgoing > 1)) || (s == t && incoming > 2)) {
                verdict.witness_vertex = s;
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  "cluster would be entered or left more than once");
            }
        }
    } else {
        for (int i = 0; i < k; ++i) {
            const auto& att = layout.attachments[i];
            if (att.size() > 2) {
                verdict.witness_vertex = att.front();
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  "cluster has more than two cross-cluster required edges");
            }
            if (att.size() == 2 && !ends_compatible(comps[i], att[0], att[1])) {
                verdict.witness_vertex = att[0];
                return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                  att[0] == att[1] ? "both cross edges meet one vertex of a cluster with other content"
                                                   : "cross-edge attachments close a required path early");
            }
        }
    }

    // Clusters linked by cross edges must form simple chains, or a single
    // cycle through every cluster that has required content.
    if (!layout.cross_edges.empty()) {
        std::vector<int> parent(static_cast<std::size_t>(k));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::optional<VertexPair> closing;
        for (const VertexPair& e : layout.cross_edges) {
            int a = find(layout.cluster_of[e.u]);
            int b = find(layout.cluster_of[e.v]);
            if (a == b) {
                closing = e;
                continue;
            }
            parent[b] = a;
        }
        if (closing) {
            const int root = find(layout.cluster_of[closing->u]);
            for (int i = 0; i < k; ++i)
                if (layout.has_content(i) && find(i) != root) {
                    verdict.witness_edge = *closing;
                    return infeasible(verdict, FeasibilityStatus::InfeasibleStructure,
                                      "cross edges close a cycle of clusters that misses other required content");
                }
        }
    }

    if (inst.ends && !build_cluster_chains(inst, layout)) {
        verdict.witness_edge = layout.cross_edges.front();
        return infeasible(verdict, FeasibilityStatus::InfeasibleCrossEdge,
                          "cross edges cannot be ordered as consecutive (t_i, s_j) links");
    }
    return verdict;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<ClusterChain>> build_cluster_chains(const MetricInstance& inst,
                                                             const RequiredLayout& layout) {
    const int k = static_cast<int>(inst.cluster_count());
    const auto& cross = layout.cross_edges;
    std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(k));
    for (std::size_t e = 0; e < cross.size(); ++e) {
        incident[layout.cluster_of[cross[e].u]].push_back(e);
        incident[layout.cluster_of[cross[e].v]].push_back(e);
    }
    for (const auto& inc : incident)
        if (inc.size() > 2) return std::nullopt;

    auto other_cluster = [&](int c, std::size_t e) {
        int cu = layout.cluster_of[cross[e].u];
        return cu == c ? layout.cluster_of[cross[e].v] : cu;
    };
    auto next_edge = [&](int c, std::size_t came_by) -> std::optional<std::size_t> {
        for (std::size_t e : incident[c])
            if (e != came_by) return e;
        return std::nullopt;
    };
    auto endpoint_in = [&](int c, std::size_t e) {
        return layout.cluster_of[cross[e].u] == c ? cross[e].u : cross[e].v;
    };

    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::vector<ClusterChain> chains;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    for (int c = 0; c < k; ++c) {
        if (seen[c] || !layout.has_content(c)) continue;
        // Find an end of the chain through c, or detect a cycle.
        int start = c;
        bool cyclic = false;
        {
            int cur = c;
            std::size_t came = kNone;
            for (int steps = 0; steps <= k; ++steps) {
                auto e = next_edge(cur, came);
                if (!e) break;
                cur = other_cluster(cur, *e);
                came = *e;
                if (cur == c) {
                    cyclic = true;
                    break;
                }
            }
            if (!cyclic) start = cur;
        }
        ClusterChain chain;
        chain.cyclic = cyclic;
        int cur = start;
        std::size_t came = kNone;
        chain.clusters.push_back(cur);
        seen[cur] = true;
        while (true) {
            auto e = next_edge(cur, came);
            if (!e) break;
            int nxt = other_cluster(cur, *e);
            chain.links.emplace_back(endpoint_in(cur, *e), endpoint_in(nxt, *e));
            came = *e;
            cur = nxt;
            if (cur == start) break;
            chain.clusters.push_back(cur);
            seen[cur] = true;
        }

        auto reversed = [](const ClusterChain& ch) {
            ClusterChain r = ch;
            std::reverse(r.clusters.begin(), r.clusters.end());
            std::reverse(r.links.begin(), r.links.end());
            for (auto& l : r.links) std::swap(l.first, l.second);
            if (r.cyclic) {
                // keep the first cluster first
                std::rotate(r.clusters.rbegin(), r.clusters.rbegin() + 1, r.clusters.rend());
            }
            return r;
        };
        if (inst.ends) {
            const auto& ends = *inst.ends;
            auto consistent = [&](const ClusterChain& ch) {
                for (std::size_t j = 0; j < ch.links.size(); ++j) {
                    int from = ch.clusters[j];
                    int to = ch.clusters[(j + 1) % ch.clusters.size()];
                    if (ch.links[j].first != ends[from].end || ch.links[j].second != ends[to].start) return false;
                }
                return true;
            };
            if (!consistent(chain)) {
                chain = reversed(chain);
                if (!consistent(chain)) return std::nullopt;
            }
        } else if (!chain.cyclic && chain.clusters.back() < chain.clusters.front()) {
            chain = reversed(chain);
        }
        chains.push_back(std::move(chain));
    }
    return chains;
}

// ---------------------------------------------------------------------------

std::vector<ClusterSubgraph> build_cluster_subgraphs(const MetricInstance& inst) {
    const RequiredLayout layout = analyze_required(inst);
    std::vector<ClusterSubgraph> out;
    for (std::size_t i = 0; i < inst.cluster_count(); ++i) {
        ClusterSubgraph sub;
        sub.cluster = static_cast<int>(i);
        sub.edges = layout.internal_edges[i];
        for (const VertexPair& e : sub.edges) {
            sub.vertices.push_back(e.u);
            sub.vertices.push_back(e.v);
        }
        for (Vertex v : inst.clusters[i])
            if (layout.is_required_vertex[v]) sub.vertices.push_back(v);
        if (inst.ends) {
            sub.vertices.push_back((*inst.ends)[i].start);
            sub.vertices.push_back((*inst.ends)[i].end);
        }
        sort_unique(sub.vertices);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace gcrp
