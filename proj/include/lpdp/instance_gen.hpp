#pragma once

#include <cstdint>
#include <vector>

#include "lpdp/graph.hpp"
#include "lpdp/rng.hpp"

namespace lpdp {

// Runs a FIFO BFS (neighbors in ascending id) from a seeded random root and
// keeps the first `size` discovered vertices; the instance is the induced
// subgraph with ids remapped to discovery order, s = root, t = a seeded
// uniform draw over the other kept vertices. Roots whose component is too
// small are redrawn from the same stream, at most 100 times.
inline Instance extract_bfs_subgraph(const Graph& g, std::uint32_t size, std::uint64_t seed) {
    const Vertex n = g.vertex_count();
    if (size < 2 || size > n) fail(errc::usage, "subgraph size must lie in [2, vertex_count]");
    SplitMix64 rng(seed);

    constexpr int kMaxRootRetries = 100;
    for (int attempt = 0; attempt < kMaxRootRetries; ++attempt) {
        const Vertex root = static_cast<Vertex>(rng.below(n));
        std::vector<Vertex> order{root};
        std::vector<std::uint8_t> seen(n, 0);
        seen[root] = 1;
        for (std::size_t head = 0; head < order.size() && order.size() < size; ++head)
            for (const Edge& e : g.neighbors(order[head])) {
                if (seen[e.to]) continue;
                seen[e.to] = 1;
                order.push_back(e.to);
                if (order.size() == size) break;
            }
        if (order.size() < size) continue;

        std::vector<Vertex> new_id(n, 0);
        for (std::uint32_t i = 0; i < size; ++i) new_id[order[i]] = i;
        std::vector<EdgeTriple> edges;
        for (std::uint32_t i = 0; i < size; ++i)
            for (const Edge& e : g.neighbors(order[i]))
                if (seen[e.to] && order[i] < e.to) edges.emplace_back(new_id[order[i]], new_id[e.to], e.weight);
        Graph sub = Graph::from_edges(size, edges);
        const Vertex t = 1 + static_cast<Vertex>(rng.below(size - 1));
        return make_instance(std::move(sub), 0, t);
    }
    fail(errc::component_too_small, "no component with " + std::to_string(size) + " vertices found in 100 root draws");
}

// Adds fresh endpoints adjacent to every original vertex through weight-0
// edges (the endpoints themselves stay non-adjacent), so the longest s-t
// path in the result has the weight of the longest path anywhere in g.
inline Instance anypair_reduction(const Graph& g) {
    const Vertex n = g.vertex_count();
    if (n < 1) fail(errc::usage, "any-pair reduction needs a nonempty graph");
    std::vector<EdgeTriple> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()) + 2u * n);
    for (Vertex v = 0; v < n; ++v)
        for (const Edge& e : g.neighbors(v))
            if (v < e.to) edges.emplace_back(v, e.to, e.weight);
    const Vertex s = n, t = n + 1;
    for (Vertex v = 0; v < n; ++v) {
        edges.emplace_back(s, v, 0);
        edges.emplace_back(t, v, 0);
    }
    return make_instance(Graph::from_edges(n + 2, edges), s, t);
}

} // namespace lpdp
