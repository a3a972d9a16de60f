#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "lpdp/block_table.hpp"
#include "lpdp/block_view.hpp"
#include "lpdp/graph.hpp"
#include "lpdp/rng.hpp"

namespace testsupport {

using namespace lpdp;

// Simple connected-ish random graph: a random spanning arrangement is NOT
// forced; callers wanting connectivity should check or use random_connected.
inline Graph random_graph(Vertex n, double density, std::uint64_t seed, Weight max_w = 9) {
    SplitMix64 rng(seed);
    std::vector<EdgeTriple> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.unit() < density) edges.emplace_back(u, v, rng.below(max_w + 1));
    return Graph::from_edges(n, edges);
}

inline Graph random_connected_graph(Vertex n, double extra_density, std::uint64_t seed, Weight max_w = 9) {
    SplitMix64 rng(seed);
    std::set<std::pair<Vertex, Vertex>> present;
    std::vector<EdgeTriple> edges;
    for (Vertex v = 1; v < n; ++v) {
        const Vertex u = static_cast<Vertex>(rng.below(v));
        edges.emplace_back(u, v, rng.below(max_w + 1));
        present.insert({u, v});
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!present.count({u, v}) && rng.unit() < extra_density)
                edges.emplace_back(u, v, rng.below(max_w + 1));
    return Graph::from_edges(n, edges);
}

inline Graph path_graph(const std::vector<Weight>& weights) {
    std::vector<EdgeTriple> edges;
    for (Vertex i = 0; i < weights.size(); ++i) edges.emplace_back(i, i + 1, weights[i]);
    return Graph::from_edges(static_cast<Vertex>(weights.size() + 1), edges);
}

inline Graph unit_path(Vertex n) {
    return path_graph(std::vector<Weight>(n - 1, 1));
}

inline Graph grid_graph(Vertex rows, Vertex cols) {
    std::vector<EdgeTriple> edges;
    const auto id = [cols](Vertex r, Vertex c) { return r * cols + c; };
    for (Vertex r = 0; r < rows; ++r)
        for (Vertex c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1), 1);
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c), 1);
        }
    return Graph::from_edges(rows * cols, edges);
}

// Hand-built leaf view over the whole graph: every vertex is inner, the given
// vertices carry cut (or extra terminal) boundary markers. Bypasses the
// partition machinery so table code can be exercised in isolation.
inline BlockView make_leaf_view(const Graph& g, const std::vector<Vertex>& cuts,
                                const std::vector<std::pair<Vertex, AuxKind>>& terms = {}) {
    BlockView view;
    view.block = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x) view.inner.push_back({x, -1, 0});
    for (Vertex x : cuts) view.aux.push_back({x, x, AuxKind::cut});
    for (auto [x, k] : terms) view.aux.push_back({x, x, k});
    std::sort(view.aux.begin(), view.aux.end(), [](const ViewAux& a, const ViewAux& b) {
        if (a.orig != b.orig) return a.orig < b.orig;
        return a.kind < b.kind;
    });
    view.adj.resize(view.total_nodes());
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        for (const Edge& e : g.neighbors(x))
            if (x < e.to) detail::add_view_edge(view, x, e.to, e.weight, false);
    for (std::size_t j = 0; j < view.aux.size(); ++j)
        detail::add_view_edge(view, view.aux[j].attach, view.aux_node(static_cast<std::uint32_t>(j)), 0, false);
    detail::finish_view(view, 30);
    return view;
}

// True iff the two frozen tables answer every (matching, excluded-set) query
// over the view's boundary identically.
inline bool same_queries(const BlockView& view, const BlockTable& a, const BlockTable& b) {
    const int beta = static_cast<int>(view.aux.size());
    std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
    bool ok = true;
    const auto check_all_c = [&](const MatchKey& m) {
        const BoundaryMask mv = m.vertex_mask();
        const BoundaryMask free =
            (beta == 32 ? ~BoundaryMask{0} : (BoundaryMask{1} << beta) - 1) & ~mv;
        BoundaryMask c = 0;
        while (true) {
            if (a.query(m, c) != b.query(m, c)) {
                ok = false;
                return;
            }
            if (c == free) break;
            c = (c - free) & free;
        }
    };
    const auto rec = [&](auto&& self, int from) -> void {
        if (!ok) return;
        check_all_c(make_match_key(pairs));
        for (int x = from; x < beta; ++x) {
            bool used_x = false;
            for (auto [p, q] : pairs) used_x |= p == x || q == x;
            if (used_x) continue;
            for (int y = x + 1; y < beta; ++y) {
                bool used_y = false;
                for (auto [p, q] : pairs) used_y |= p == y || q == y;
                if (used_y) continue;
                pairs.push_back({static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)});
                self(self, x + 1);
                pairs.pop_back();
            }
        }
    };
    rec(rec, 0);
    return ok;
}

} // namespace testsupport
