#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gcrp {

using Vertex = int;
using Cost = std::int64_t;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Dense symmetric cost table over vertices 0..n-1.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, Cost fill = 0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }

    Cost operator()(Vertex u, Vertex v) const {
        return data_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
    }
    Cost& at(Vertex u, Vertex v) {
        return data_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
    }
    // Sets both (u,v) and (v,u).
    void set(Vertex u, Vertex v, Cost c) {
        at(u, v) = c;
        at(v, u) = c;
    }

    // Local matrix whose index i stands for vertices[i].
    DistanceMatrix restricted_to(std::span<const Vertex> vertices) const;

    bool operator==(const DistanceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Cost> data_;
};

// Unordered vertex pair, stored with u <= v.
struct VertexPair {
    Vertex u = 0;
    Vertex v = 0;

    VertexPair() = default;
    VertexPair(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool contains(Vertex x) const { return u == x || v == x; }
    Vertex other(Vertex x) const { return x == u ? v : u; }

    auto operator<=>(const VertexPair&) const = default;
};

// Weighted edge of a multigraph; orientation is meaningful only for directed uses.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Cost cost = 0;

    bool operator==(const Edge&) const = default;
};

// Ordered vertex sequence. A closed walk stores each position once and
// implicitly returns from the last vertex to the first.
struct Walk {
    std::vector<Vertex> vertices;
    bool closed = false;
    Cost cost = 0;

    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
    bool operator==(const Walk&) const = default;
};

Cost walk_cost(std::span<const Vertex> sequence, bool closed, const DistanceMatrix& dist);

Walk make_walk(std::vector<Vertex> sequence, bool closed, const DistanceMatrix& dist);

// Drops consecutive repeats (including the wrap-around repeat of a closed
// walk). Zero-length steps carry no cost, so the walk cost is unchanged.
Walk make_compact_walk(std::vector<Vertex> sequence, bool closed, const DistanceMatrix& dist);

// True if (a,b) appears as consecutive positions of the walk, in either
// direction unless `directed`.
bool walk_has_step(const Walk& walk, Vertex a, Vertex b, bool directed);

}  // namespace gcrp
