#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "gcrp/instance.hpp"
#include "gcrp/random.hpp"

namespace fixtures {

using namespace gcrp;

inline DistanceMatrix unit_metric(std::size_t n) {
    DistanceMatrix d(n, 1);
    for (std::size_t i = 0; i < n; ++i) d.at(static_cast<Vertex>(i), static_cast<Vertex>(i)) = 0;
    return d;
}

inline DistanceMatrix line_metric(const std::vector<long long>& xs) {
    DistanceMatrix d(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j)
            d.at(static_cast<Vertex>(i), static_cast<Vertex>(j)) = std::llabs(xs[i] - xs[j]);
    return d;
}

inline DistanceMatrix seeded_metric(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return euclidean_metric(random_points(n, 1000, rng));
}

inline std::vector<Vertex> iota_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
    return v;
}

inline std::vector<Vertex> sample_vertices(std::size_t n, std::size_t count, Rng& rng) {
    std::vector<Vertex> all = iota_vertices(n);
    rng.shuffle(all);
    all.resize(count);
    return all;
}

}  // namespace fixtures
