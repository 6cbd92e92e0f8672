#include <algorithm>
#include <cmath>

#include "gcrp/instance.hpp"
#include "gcrp/random.hpp"

namespace gcrp {

namespace {

constexpr int kMaxAttempts = 1000;

void check_params(const GeneratorParams& p) {
    if (p.k < 1 || p.n < p.k) throw InvalidArgument("generate_random: need n >= k >= 1");
    for (double f : {p.frac_required_v, p.frac_required_e})
        if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("generate_random: fractions must lie in [0,1]");
    if (p.coordinate_box < 2 ||
        static_cast<long long>(p.coordinate_box) * p.coordinate_box < static_cast<long long>(p.n))
        throw InvalidArgument("generate_random: coordinate box too small for n distinct points");
}

MetricInstance draw(const GeneratorParams& p, Rng& rng) {
    const auto points = random_points(static_cast<std::size_t>(p.n), p.coordinate_box, rng);
    DistanceMatrix dist = euclidean_metric(points);

    // Vertices 0..k-1 seed the clusters; every other vertex joins the
    // nearest seed, so clusters are spatially grouped.
    std::vector<std::vector<Vertex>> clusters(static_cast<std::size_t>(p.k));
    std::vector<int> cluster_of(static_cast<std::size_t>(p.n));
    for (int v = 0; v < p.n; ++v) {
        int best = v < p.k ? v : 0;
        if (v >= p.k)
            for (int c = 1; c < p.k; ++c)
                if (dist(v, c) < dist(v, best)) best = c;
        clusters[best].push_back(v);
        cluster_of[v] = best;
    }

    std::vector<Vertex> required_vertices;
    for (int v = 0; v < p.n; ++v)
        if (rng.chance(p.frac_required_v)) required_vertices.push_back(v);

    std::optional<std::vector<ClusterEnds>> ends;
    if (p.endpoints == EndpointsMode::Given) {
        ends.emplace();
        for (const auto& c : clusters) {
            if (c.size() == 1) {
                ends->push_back({c[0], c[0]});
                continue;
            }
            std::size_t a = rng.below(c.size());
            std::size_t b = rng.below(c.size() - 1);
            if (b >= a) ++b;
            ends->push_back({c[a], c[b]});
        }
    }

    std::vector<VertexPair> intra;
    std::vector<VertexPair> cross;
    if (ends) {
        for (const auto& c : clusters)
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) intra.emplace_back(c[i], c[j]);
        for (int i = 0; i < p.k; ++i)
            for (int j = 0; j < p.k; ++j)
                if (i != j && (*ends)[i].end != (*ends)[j].start) {
                    VertexPair e((*ends)[i].end, (*ends)[j].start);
                    if (std::find(cross.begin(), cross.end(), e) == cross.end()) cross.push_back(e);
                }
    } else {
        for (int u = 0; u < p.n; ++u)
            for (int v = u + 1; v < p.n; ++v) (cluster_of[u] == cluster_of[v] ? intra : cross).emplace_back(u, v);
    }

    const auto m = static_cast<std::size_t>(std::llround(p.frac_required_e * (p.n - 1)));
    std::vector<VertexPair> required_edges;
    std::vector<VertexPair> pool = intra;
    if (p.cross == CrossPolicy::AtLeastOne && !cross.empty()) {
        rng.shuffle(cross);
        required_edges.push_back(cross.front());
        pool.insert(pool.end(), cross.begin() + 1, cross.end());
    } else if (p.cross != CrossPolicy::None) {
        pool.insert(pool.end(), cross.begin(), cross.end());
    }
    rng.shuffle(pool);
    for (std::size_t i = 0; i < pool.size() && required_edges.size() < m; ++i) required_edges.push_back(pool[i]);
    if (p.cross == CrossPolicy::AtLeastOne && required_edges.size() > std::max<std::size_t>(m, 1))
        required_edges.resize(std::max<std::size_t>(m, 1));

    return make_instance(std::move(dist), std::move(clusters), std::move(required_vertices),
                         std::move(required_edges), std::move(ends));
}

}  // namespace

MetricInstance generate_random(const GeneratorParams& params, std::uint64_t seed) {
    check_params(params);
    Rng rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        MetricInstance inst = draw(params, rng);
        if (!validate_metric(inst).empty()) continue;
        const FeasibilityVerdict verdict = classify(inst);
        if (!verdict.feasible()) continue;
        if (params.cross == CrossPolicy::AtLeastOne && verdict.cross_edge_count == 0) continue;
        return inst;
    }
    throw GenerationError("no feasible instance after " + std::to_string(kMaxAttempts) +
                          " attempts (n=" + std::to_string(params.n) + ", k=" + std::to_string(params.k) +
                          ", frac-e=" + std::to_string(params.frac_required_e) + ")");
}

}  // namespace gcrp
