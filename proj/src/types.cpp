#include "gcrp/types.hpp"

namespace gcrp {

DistanceMatrix DistanceMatrix::restricted_to(std::span<const Vertex> vertices) const {
    DistanceMatrix local(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j)
            local.at(static_cast<Vertex>(i), static_cast<Vertex>(j)) = (*this)(vertices[i], vertices[j]);
    return local;
}

Cost walk_cost(std::span<const Vertex> sequence, bool closed, const DistanceMatrix& dist) {
    Cost total = 0;
    for (std::size_t i = 1; i < sequence.size(); ++i) total += dist(sequence[i - 1], sequence[i]);
    if (closed && sequence.size() > 1) total += dist(sequence.back(), sequence.front());
    return total;
}

Walk make_walk(std::vector<Vertex> sequence, bool closed, const DistanceMatrix& dist) {
    Walk w;
    w.cost = walk_cost(sequence, closed, dist);
    w.vertices = std::move(sequence);
    w.closed = closed;
    return w;
}

Walk make_compact_walk(std::vector<Vertex> sequence, bool closed, const DistanceMatrix& dist) {
    std::vector<Vertex> out;
    out.reserve(sequence.size());
    for (Vertex v : sequence)
        if (out.empty() || out.back() != v) out.push_back(v);
    if (closed)
        while (out.size() > 1 && out.back() == out.front()) out.pop_back();
    return make_walk(std::move(out), closed, dist);
}

bool walk_has_step(const Walk& walk, Vertex a, Vertex b, bool directed) {
    const auto& seq = walk.vertices;
    const std::size_t n = seq.size();
    if (n < 2) return false;
    const std::size_t steps = walk.closed ? n : n - 1;
    for (std::size_t i = 0; i < steps; ++i) {
        Vertex x = seq[i];
        Vertex y = seq[(i + 1) % n];
        if (x == a && y == b) return true;
        if (!directed && x == b && y == a) return true;
    }
    return false;
}

}  // namespace gcrp
