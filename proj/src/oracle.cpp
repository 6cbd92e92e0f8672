#include "gcrp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>

#include "gcrp/gcrp.hpp"

namespace gcrp {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
using Mask = std::uint32_t;

void check_stop(const std::stop_token& stop) {
    if (stop.stop_requested()) throw OracleCancelled("oracle cancelled");
}

void check_cap(std::size_t size, int cap, const char* what) {
    if (static_cast<long long>(size) > cap)
        throw OracleCapExceeded(std::string(what) + ": size " + std::to_string(size) + " exceeds the oracle cap " +
                                std::to_string(cap));
}

std::vector<Vertex> distinct(std::span<const Vertex> vertices) {
    std::vector<Vertex> v(vertices.begin(), vertices.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw InvalidArgument("oracle: duplicate vertices");
    return v;
}

int local_index(const std::vector<Vertex>& ids, Vertex v) {
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v) throw InvalidArgument("oracle: vertex " + std::to_string(v) + " not in the set");
    return static_cast<int>(it - ids.begin());
}

// Subset dynamic program over Hamiltonian paths of local vertices 0..m-1.
struct PathDp {
    const DistanceMatrix& local;  // indexed by local ids
    int m;
    // Required-edge neighbours. A path must traverse each required edge as a
    // consecutive pair.
    std::vector<Mask> nbr;
    std::function<bool(Mask, int, int)> step_ok;  // optional extra rule
    std::function<bool(int)> final_ok;           // optional rule on the last vertex
    std::optional<int> close_to;                  // add the closing step back to this vertex
    std::uint64_t* nodes = nullptr;
    const std::stop_token* stop = nullptr;

    struct Result {
        Cost cost = kInf;
        std::vector<int> seq;
    };

    Result run(const std::vector<int>& starts) const {
        const Mask full = m == 32 ? ~Mask{0} : (Mask{1} << m) - 1;
        const std::size_t states = static_cast<std::size_t>(full) + 1;
        std::vector<Cost> dp(states * static_cast<std::size_t>(m), kInf);
        std::vector<signed char> from(states * static_cast<std::size_t>(m), -1);
        auto at = [&](Mask mask, int v) { return static_cast<std::size_t>(mask) * static_cast<std::size_t>(m) + v; };
        for (int s : starts) dp[at(Mask{1} << s, s)] = 0;

        for (Mask mask = 1; mask <= full; ++mask) {
            if (stop && (mask & 0xff) == 0) check_stop(*stop);
            for (int last = 0; last < m; ++last) {
                const Cost base = dp[at(mask, last)];
                if (base >= kInf) continue;
                const Mask open_nbrs = nbr[last] & ~mask;
                for (int next = 0; next < m; ++next) {
                    const Mask bit = Mask{1} << next;
                    if (mask & bit) continue;
                    if (nodes) ++*nodes;
                    if (open_nbrs & ~bit) continue;                      // a required edge at last stays untraversed
                    if ((nbr[next] & mask) & ~(Mask{1} << last)) continue;  // next's required edge was skipped
                    if (step_ok && !step_ok(mask, last, next)) continue;
                    const Cost c = base + local(last, next);
                    auto& slot = dp[at(mask | bit, next)];
                    if (c < slot) {
                        slot = c;
                        from[at(mask | bit, next)] = static_cast<signed char>(last);
                    }
                }
            }
        }

        Result best;
        int best_last = -1;
        for (int last = 0; last < m; ++last) {
            Cost c = dp[at(full, last)];
            if (c >= kInf) continue;
            if (final_ok && !final_ok(last)) continue;
            if (close_to) c += local(last, *close_to);
            if (c < best.cost) {
                best.cost = c;
                best_last = last;
            }
        }
        if (best_last < 0) return best;
        Mask mask = full;
        for (int v = best_last; v >= 0;) {
            best.seq.push_back(v);
            int p = from[at(mask, v)];
            mask &= ~(Mask{1} << v);
            v = p;
        }
        std::reverse(best.seq.begin(), best.seq.end());
        return best;
    }
};

Walk to_walk(const std::vector<int>& seq, const std::vector<Vertex>& ids, bool closed, const DistanceMatrix& dist) {
    std::vector<Vertex> out;
    for (int x : seq) out.push_back(ids[x]);
    return make_walk(std::move(out), closed, dist);
}

}  // namespace

OracleResult exact_tsp(std::span<const Vertex> vertices, const DistanceMatrix& dist, const OracleBudget& budget,
                       std::stop_token stop) {
    check_cap(vertices.size(), budget.tsp_cap, "exact_tsp");
    const auto ids = distinct(vertices);
    OracleResult r;
    r.budget = budget;
    if (ids.empty()) throw InvalidArgument("exact_tsp: no vertices");
    if (ids.size() == 1) {
        r.witness = Walk{{ids[0]}, true, 0};
        return r;
    }
    const DistanceMatrix local = dist.restricted_to(ids);
    PathDp dp{local, static_cast<int>(ids.size()), std::vector<Mask>(ids.size(), 0), {}, {}, 0, &r.nodes_explored, &stop};
    auto res = dp.run({0});
    r.opt_cost = res.cost;
    r.witness = to_walk(res.seq, ids, true, dist);
    return r;
}

OracleResult exact_tsp_path(std::span<const Vertex> vertices, const DistanceMatrix& dist, std::optional<Vertex> s,
                            std::optional<Vertex> t, const OracleBudget& budget, std::stop_token stop) {
    return exact_tgpp(RequiredSets{std::vector<Vertex>(vertices.begin(), vertices.end()), {}}, dist, s, t, budget,
                      std::move(stop));
}

OracleResult exact_tgpp(const RequiredSets& required, const DistanceMatrix& dist, std::optional<Vertex> s,
                        std::optional<Vertex> t, const OracleBudget& budget, std::stop_token stop) {
    std::vector<Vertex> all = required.vertices;
    for (const VertexPair& e : required.edges) {
        all.push_back(e.u);
        all.push_back(e.v);
    }
    if (s) all.push_back(*s);
    if (t) all.push_back(*t);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    check_cap(all.size(), budget.tsp_cap, "exact_tgpp");
    if (all.empty()) throw InvalidArgument("exact_tgpp: nothing to visit");

    OracleResult r;
    r.budget = budget;
    if (s && t && *s == *t) {
        if (all.size() != 1) throw InvalidArgument("exact_tgpp: s = t with other required content");
        r.witness = Walk{{*s}, false, 0};
        return r;
    }
    if (all.size() == 1) {
        r.witness = Walk{{all[0]}, false, 0};
        return r;
    }
    // With only t fixed, search from t and reverse.
    bool flip = false;
    if (!s && t) {
        s = t;
        t.reset();
        flip = true;
    }
    const int m = static_cast<int>(all.size());
    const DistanceMatrix local = dist.restricted_to(all);
    std::vector<Mask> nbr(static_cast<std::size_t>(m), 0);
    for (const VertexPair& e : required.edges) {
        int a = local_index(all, e.u);
        int b = local_index(all, e.v);
        nbr[a] |= Mask{1} << b;
        nbr[b] |= Mask{1} << a;
    }
    std::vector<int> starts;
    if (s) {
        starts.push_back(local_index(all, *s));
    } else {
        starts.resize(all.size());
        std::iota(starts.begin(), starts.end(), 0);
    }
    std::function<bool(int)> final_ok;
    if (t) {
        const int ti = local_index(all, *t);
        final_ok = [ti](int last) { return last == ti; };
    }
    PathDp dp{local, m, nbr, {}, final_ok, std::nullopt, &r.nodes_explored, &stop};
    auto res = dp.run(starts);
    if (res.seq.empty()) throw InvalidArgument("exact_tgpp: no feasible path");
    if (flip) std::reverse(res.seq.begin(), res.seq.end());
    r.opt_cost = res.cost;
    r.witness = to_walk(res.seq, all, false, dist);
    return r;
}

OracleResult exact_tsp_enumerate(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                                 const OracleBudget& budget, std::stop_token stop) {
    check_cap(vertices.size(), budget.tsp_cap, "exact_tsp_enumerate");
    auto ids = distinct(vertices);
    if (ids.empty()) throw InvalidArgument("exact_tsp_enumerate: no vertices");
    OracleResult r;
    r.budget = budget;
    r.opt_cost = kInf;
    do {
        check_stop(stop);
        ++r.nodes_explored;
        Cost c = walk_cost(ids, true, dist);
        if (c < r.opt_cost) {
            r.opt_cost = c;
            r.witness = make_walk(ids, true, dist);
        }
    } while (std::next_permutation(ids.begin() + 1, ids.end()));
    return r;
}

OracleResult exact_tsp_path_enumerate(std::span<const Vertex> vertices, const DistanceMatrix& dist,
                                      std::optional<Vertex> s, std::optional<Vertex> t, const OracleBudget& budget,
                                      std::stop_token stop) {
    check_cap(vertices.size(), budget.tsp_cap, "exact_tsp_path_enumerate");
    auto ids = distinct(vertices);
    if (ids.empty()) throw InvalidArgument("exact_tsp_path_enumerate: no vertices");
    OracleResult r;
    r.budget = budget;
    r.opt_cost = kInf;
    do {
        check_stop(stop);
        ++r.nodes_explored;
        if (s && ids.front() != *s) continue;
        if (t && ids.back() != *t) continue;
        Cost c = walk_cost(ids, false, dist);
        if (c < r.opt_cost) {
            r.opt_cost = c;
            r.witness = make_walk(ids, false, dist);
        }
    } while (std::next_permutation(ids.begin(), ids.end()));
    if (r.opt_cost >= kInf) throw InvalidArgument("exact_tsp_path_enumerate: no path with these ends");
    return r;
}

OracleResult exact_gcrp(const MetricInstance& inst, const OracleBudget& budget, std::stop_token stop) {
    check_cap(inst.size(), budget.gcrp_cap, "exact_gcrp");
    const FeasibilityVerdict verdict = classify(inst);
    if (!verdict.feasible()) throw InfeasibleInstance(verdict);
    const RequiredLayout layout = analyze_required(inst);
    const std::vector<Vertex> ids = layout.all_content();
    OracleResult r;
    r.budget = budget;
    const int m = static_cast<int>(ids.size());
    if (m <= 1) {
        r.witness = make_walk(ids, true, inst.dist);
        return r;
    }

    const DistanceMatrix local = inst.dist.restricted_to(ids);
    std::vector<int> cl(static_cast<std::size_t>(m));
    std::vector<Mask> cluster_mask(inst.cluster_count(), 0);
    for (int i = 0; i < m; ++i) {
        cl[i] = layout.cluster_of[ids[i]];
        cluster_mask[cl[i]] |= Mask{1} << i;
    }
    std::vector<Mask> nbr(static_cast<std::size_t>(m), 0);
    for (const VertexPair& e : inst.required_edges) {
        int a = local_index(ids, e.u);
        int b = local_index(ids, e.v);
        nbr[a] |= Mask{1} << b;
        nbr[b] |= Mask{1} << a;
    }
    std::vector<int> s_of(inst.cluster_count(), -1), t_of(inst.cluster_count(), -1);
    if (inst.ends)
        for (std::size_t c = 0; c < inst.cluster_count(); ++c) {
            s_of[c] = local_index(ids, (*inst.ends)[c].start);
            t_of[c] = local_index(ids, (*inst.ends)[c].end);
        }
    const bool with_ends = inst.ends.has_value();
    const int first_cluster = cl[0];
    const bool single_cluster = cluster_mask[first_cluster] == ((Mask{1} << m) - 1);

    // The tour is read from the start of first_cluster's block.
    std::vector<int> starts;
    if (with_ends)
        starts.push_back(s_of[first_cluster]);
    else
        for (int i = 0; i < m; ++i)
            if (cl[i] == first_cluster) starts.push_back(i);

    auto step_ok = [&](Mask mask, int last, int next) {
        if (cl[next] != cl[last]) {
            if (cluster_mask[cl[last]] & ~mask) return false;  // leaving an unfinished cluster
            if (cluster_mask[cl[next]] & mask) return false;   // re-entering a cluster
            if (with_ends && (last != t_of[cl[last]] || next != s_of[cl[next]])) return false;
        } else if (with_ends && last == t_of[cl[last]]) {
            return false;  // t_i closes its block
        }
        return true;
    };

    PathDp::Result best;
    for (int b : starts) {
        // The closing step may carry one required edge at b: its other end
        // must then come last.
        std::vector<std::optional<int>> closers{std::nullopt};
        for (int f = 0; f < m; ++f)
            if (nbr[b] & (Mask{1} << f)) closers.push_back(f);
        for (auto f : closers) {
            std::vector<Mask> n2 = nbr;
            if (f) {
                n2[b] &= ~(Mask{1} << *f);
                n2[*f] &= ~(Mask{1} << b);
            }
            auto final_ok = [&, f](int last) {
                if (f && last != *f) return false;
                if (with_ends && last != t_of[cl[last]]) return false;
                if (cl[last] == first_cluster && !single_cluster) return false;
                return true;
            };
            PathDp dp{local, m, n2, step_ok, final_ok, b, &r.nodes_explored, &stop};
            auto res = dp.run({b});
            if (res.cost < best.cost) best = std::move(res);
        }
    }
    if (best.seq.empty()) throw InvalidArgument("exact_gcrp: no cluster-consecutive tour exists");
    r.opt_cost = best.cost;
    r.witness = to_walk(best.seq, ids, true, inst.dist);
    return r;
}

OracleResult exact_gcrp_enumerate(const MetricInstance& inst, const OracleBudget& budget, std::stop_token stop) {
    check_cap(inst.size(), budget.gcrp_cap, "exact_gcrp_enumerate");
    const FeasibilityVerdict verdict = classify(inst);
    if (!verdict.feasible()) throw InfeasibleInstance(verdict);
    std::vector<Vertex> ids = analyze_required(inst).all_content();
    OracleResult r;
    r.budget = budget;
    if (ids.size() <= 1) {
        r.witness = make_walk(ids, true, inst.dist);
        return r;
    }
    r.opt_cost = kInf;
    do {
        check_stop(stop);
        ++r.nodes_explored;
        Walk w = make_walk(ids, true, inst.dist);
        if (w.cost >= r.opt_cost) continue;
        if (!check_tour(inst, w).empty()) continue;
        r.opt_cost = w.cost;
        r.witness = std::move(w);
    } while (std::next_permutation(ids.begin() + 1, ids.end()));
    if (r.opt_cost >= kInf) throw InvalidArgument("exact_gcrp_enumerate: no valid tour");
    return r;
}

namespace {

OracleResult exact_arcs(const ArcTask& task, const DistanceMatrix& dist, bool allow_reverse,
                        const OracleBudget& budget, const std::stop_token& stop) {
    const std::size_t m = task.arcs.size();
    check_cap(m, budget.arc_cap, "exact arc routing");
    OracleResult r;
    r.budget = budget;
    if (m == 0) {
        r.witness.closed = true;
        return r;
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    // Arc 0 leads and, for undirected tasks, keeps its orientation: the mirror
    // image of a tour costs the same.
    const std::uint32_t flips = allow_reverse ? (1u << (m - 1)) : 1u;
    r.opt_cost = kInf;
    do {
        check_stop(stop);
        for (std::uint32_t f = 0; f < flips; ++f) {
            ++r.nodes_explored;
            std::vector<bool> rev(m, false);
            for (std::size_t j = 1; j < m; ++j) rev[j] = (f >> (j - 1)) & 1u;
            ArcRoute route = make_arc_route(task, order, rev, dist);
            if (route.walk.cost < r.opt_cost) {
                r.opt_cost = route.walk.cost;
                r.witness = route.walk;
            }
        }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return r;
}

}  // namespace

OracleResult exact_scp(const ArcTask& task, const DistanceMatrix& dist, const OracleBudget& budget,
                       std::stop_token stop) {
    if (!task.directed) throw InvalidArgument("exact_scp: task is undirected");
    return exact_arcs(task, dist, false, budget, stop);
}

OracleResult exact_rpp(const ArcTask& task, const DistanceMatrix& dist, const OracleBudget& budget,
                       std::stop_token stop) {
    if (task.directed) throw InvalidArgument("exact_rpp: task is directed");
    return exact_arcs(task, dist, true, budget, stop);
}

}  // namespace gcrp
