#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gcrp/types.hpp"

namespace gcrp {

// mt19937_64 with draw helpers whose results do not depend on the standard
// library's distribution implementations, so seeds reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    // Uniform integer in [lo, hi].
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 step; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct Point {
    long long x = 0;
    long long y = 0;
    bool operator==(const Point&) const = default;
};

// Distinct uniform points of the grid [0, box)^2.
std::vector<Point> random_points(std::size_t n, long long box, Rng& rng);

// ceil of the Euclidean distance, computed exactly. Rounding up keeps the
// triangle inequality: ceil(a) + ceil(b) >= a + b >= c.
Cost ceil_distance(Point a, Point b);

DistanceMatrix euclidean_metric(const std::vector<Point>& points);

}  // namespace gcrp
