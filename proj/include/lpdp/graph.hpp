#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lpdp/errors.hpp"

namespace lpdp {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;

struct Edge {
    Vertex to;
    Weight weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeTriple = std::tuple<Vertex, Vertex, Weight>;

// Undirected weighted graph over contiguous 0-based vertex ids.
// Immutable after construction; adjacency lists are kept sorted by neighbor id,
// symmetric, self-loop-free and parallel-edge-free.
class Graph {
public:
    Graph() = default;

    // Builds from (u,v,w) triples; both directions are inserted.
    static Graph from_edges(std::size_t n, std::span<const EdgeTriple> edges) {
        Graph g;
        g.adj_.resize(n);
        for (const auto& [u, v, w] : edges) {
            if (u >= n || v >= n) fail(errc::id_out_of_range, "edge endpoint " + std::to_string(u >= n ? u : v) + " out of range");
            if (u == v) fail(errc::self_loop, "self-loop at vertex " + std::to_string(u));
            g.adj_[u].push_back({v, w});
            g.adj_[v].push_back({u, w});
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto& row = g.adj_[v];
            std::sort(row.begin(), row.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
            for (std::size_t i = 1; i < row.size(); ++i)
                if (row[i].to == row[i - 1].to)
                    fail(errc::duplicate_edge, "duplicate edge {" + std::to_string(v) + "," + std::to_string(row[i].to) + "}");
        }
        g.m_ = edges.size();
        return g;
    }

    static Graph from_edges(std::size_t n, std::initializer_list<EdgeTriple> edges) {
        return from_edges(n, std::span<const EdgeTriple>(edges.begin(), edges.size()));
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return m_; }

    std::span<const Edge> neighbors(Vertex v) const { return adj_[v]; }

    std::optional<Weight> edge_weight(Vertex u, Vertex v) const {
        const auto& row = adj_[u];
        auto it = std::lower_bound(row.begin(), row.end(), v,
                                   [](const Edge& e, Vertex x) { return e.to < x; });
        if (it == row.end() || it->to != v) return std::nullopt;
        return it->weight;
    }

    bool has_edge(Vertex u, Vertex v) const { return edge_weight(u, v).has_value(); }

    Weight total_weight() const {
        Weight sum = 0;
        for (const auto& row : adj_)
            for (const Edge& e : row) sum += e.weight;
        return sum / 2;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Edge>> adj_;
    std::size_t m_ = 0;
};

// A path is its vertex sequence; simplicity and adjacency are checked by
// validate_path, not by the type.
using Path = std::vector<Vertex>;

struct Instance {
    Graph graph;
    Vertex source = 0;
    Vertex target = 0;
};

inline Instance make_instance(Graph g, Vertex s, Vertex t) {
    if (s >= g.vertex_count() || t >= g.vertex_count())
        fail(errc::usage, "terminal id out of range");
    if (s == t) fail(errc::usage, "source and target must differ");
    return Instance{std::move(g), s, t};
}

enum class PathFailure { none, non_edge, repeated_vertex, wrong_endpoints, empty };

struct Verdict {
    bool valid = false;
    Weight weight = 0;
    PathFailure failure = PathFailure::none;
};

// Sum of edge weights along p. A single-vertex path weighs 0.
// Throws NonEdge when consecutive vertices are not adjacent.
inline Weight path_weight(const Graph& g, const Path& p) {
    Weight sum = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const auto w = g.edge_weight(p[i - 1], p[i]);
        if (!w) fail(errc::non_edge, "vertices " + std::to_string(p[i - 1]) + " and " + std::to_string(p[i]) + " are not adjacent");
        sum += *w;
    }
    return sum;
}

// Checks that p is a simple s-t path of g. The verdict encodes the first
// violated condition, checked in the order: empty, repeated vertex,
// endpoints, adjacency.
inline Verdict validate_path(const Graph& g, const Path& p, Vertex s, Vertex t) {
    if (p.empty()) return {false, 0, PathFailure::empty};
    for (Vertex v : p)
        if (v >= g.vertex_count()) return {false, 0, PathFailure::wrong_endpoints};
    std::vector<char> seen(g.vertex_count(), 0);
    for (Vertex v : p) {
        if (seen[v]) return {false, 0, PathFailure::repeated_vertex};
        seen[v] = 1;
    }
    if (p.front() != s || p.back() != t) return {false, 0, PathFailure::wrong_endpoints};
    Weight sum = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const auto w = g.edge_weight(p[i - 1], p[i]);
        if (!w) return {false, 0, PathFailure::non_edge};
        sum += *w;
    }
    return {true, sum, PathFailure::none};
}

} // namespace lpdp
