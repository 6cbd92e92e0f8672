#include "gcrp/random.hpp"

#include <limits>
#include <set>
#include <utility>

namespace gcrp {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Point> random_points(std::size_t n, long long box, Rng& rng) {
    if (box < 1 || static_cast<unsigned long long>(box) * static_cast<unsigned long long>(box) < n)
        throw InvalidArgument("random_points: grid too small for " + std::to_string(n) + " distinct points");
    std::set<std::pair<long long, long long>> used;
    std::vector<Point> out;
    while (out.size() < n) {
        Point p{rng.between(0, box - 1), rng.between(0, box - 1)};
        if (used.insert({p.x, p.y}).second) out.push_back(p);
    }
    return out;
}

namespace {

std::uint64_t isqrt_ceil(std::uint64_t v) {
    std::uint64_t r = 0;
    std::uint64_t bit = 1ULL << 62;
    while (bit > v) bit >>= 2;
    std::uint64_t x = v;
    while (bit != 0) {
        if (x >= r + bit) {
            x -= r + bit;
            r = (r >> 1) + bit;
        } else {
            r >>= 1;
        }
        bit >>= 2;
    }
    return r * r == v ? r : r + 1;
}

}  // namespace

Cost ceil_distance(Point a, Point b) {
    const auto dx = static_cast<std::uint64_t>(a.x > b.x ? a.x - b.x : b.x - a.x);
    const auto dy = static_cast<std::uint64_t>(a.y > b.y ? a.y - b.y : b.y - a.y);
    return static_cast<Cost>(isqrt_ceil(dx * dx + dy * dy));
}

DistanceMatrix euclidean_metric(const std::vector<Point>& points) {
    DistanceMatrix d(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            d.set(static_cast<Vertex>(i), static_cast<Vertex>(j), ceil_distance(points[i], points[j]));
    return d;
}

}  // namespace gcrp
