#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lpdp/block_table.hpp"
#include "lpdp/graph.hpp"
#include "lpdp/partition.hpp"

namespace lpdp {

enum class AuxKind : std::uint8_t { cut = 0, terminal = 1 };

// Fresh degree-1 boundary vertex of a view, attached by a weight-0 edge to
// the inner node standing for its original vertex at this level.
struct ViewAux {
    std::uint32_t attach = 0; // inner node id
    Vertex orig = 0;
    AuxKind kind = AuxKind::cut;
};

// Inner node: an original vertex at leaf level, or a child block's boundary
// vertex (a "port") at coarse levels.
struct ViewInner {
    Vertex orig = 0;
    std::int32_t owner = -1;      // index into `children`, -1 at leaves
    std::uint8_t child_local = 0; // boundary index within that child
};

struct ViewEdge {
    std::uint32_t to = 0;
    Weight weight = 0;
    bool clique = false; // resolved through the owning child's table
};

// One block of the hierarchy as the segment search sees it. Node ids: inner
// nodes first, then boundary aux in boundary order. `node_faux[v]` is the set
// of this view's boundary aux standing for the same original vertex as v —
// the touched-set contribution of visiting v.
struct BlockView {
    std::uint32_t block = 0; // hierarchy node id
    std::vector<ViewInner> inner;
    std::vector<ViewAux> aux; // sorted by (orig, kind)
    std::vector<std::vector<ViewEdge>> adj;
    std::vector<std::uint32_t> children; // hierarchy node ids, empty at leaves
    std::vector<BoundaryMask> node_faux;

    std::uint32_t inner_count() const { return static_cast<std::uint32_t>(inner.size()); }
    std::uint32_t total_nodes() const { return static_cast<std::uint32_t>(inner.size() + aux.size()); }
    std::uint32_t aux_node(std::uint32_t i) const { return inner_count() + i; }
    bool is_aux_node(std::uint32_t v) const { return v >= inner_count(); }
    int aux_index(std::uint32_t v) const { return static_cast<int>(v - inner_count()); }
    Vertex node_orig(std::uint32_t v) const {
        return is_aux_node(v) ? aux[v - inner_count()].orig : inner[v].orig;
    }
};

namespace detail {

inline void add_view_edge(BlockView& view, std::uint32_t a, std::uint32_t b, Weight w, bool clique) {
    view.adj[a].push_back({b, w, clique});
    view.adj[b].push_back({a, w, clique});
}

inline void finish_view(BlockView& view, int boundary_cap) {
    std::size_t cut_aux = 0;
    for (const ViewAux& a : view.aux) cut_aux += (a.kind == AuxKind::cut);
    // terminals ride on top of the configured cap; cut aux alone must fit it
    if (cut_aux > static_cast<std::size_t>(boundary_cap) ||
        view.aux.size() > static_cast<std::size_t>(boundary_cap) + 2)
        fail(errc::boundary_too_large,
             "block " + std::to_string(view.block) + " has " + std::to_string(view.aux.size()) +
                 " boundary vertices (cap " + std::to_string(boundary_cap) + "+2)");
    if (view.aux.size() > static_cast<std::size_t>(max_boundary_size))
        fail(errc::boundary_too_large, "boundary exceeds table limit");
    for (auto& edges : view.adj)
        std::sort(edges.begin(), edges.end(),
                  [](const ViewEdge& x, const ViewEdge& y) { return x.to < y.to; });
    view.node_faux.assign(view.total_nodes(), 0);
    for (std::uint32_t v = 0; v < view.total_nodes(); ++v) {
        const Vertex o = view.node_orig(v);
        for (std::size_t j = 0; j < view.aux.size(); ++j)
            if (view.aux[j].orig == o) view.node_faux[v] |= BoundaryMask{1} << j;
    }
}

} // namespace detail

// Views for every hierarchy node, indexed by node id (ascending id is
// bottom-up). Every vertex with a cut edge unresolved at a node's level gets
// one fresh cut aux there; s and t get terminal aux at every node on their
// root paths, chaining down to the vertices themselves.
inline std::vector<BlockView> build_views(const Graph& g, const Partition& p, const Hierarchy& h,
                                          Vertex s, Vertex t, int boundary_cap = 12) {
    const std::size_t n = g.vertex_count();
    if (p.block_of.size() != n || p.k != h.leaf_count) fail(errc::usage, "partition/hierarchy mismatch");
    if (s >= n || t >= n || s == t) fail(errc::usage, "bad terminals");

    const std::uint32_t nodes = h.node_count();
    std::vector<std::uint32_t> depth(nodes, 0);
    for (std::uint32_t v = nodes; v-- > 0;)
        if (v != h.root) depth[v] = depth[h.parent[v]] + 1;

    const auto lca = [&](std::uint32_t a, std::uint32_t b) {
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            a = h.parent[a];
        }
        return a;
    };

    // cut edges grouped by the node resolving them; top_depth[x] = depth of
    // the highest node at which x still has an unresolved cut edge
    std::vector<std::vector<EdgeTriple>> cut_at(nodes);
    std::vector<std::uint32_t> top_depth(n, ~std::uint32_t{0});
    for (Vertex x = 0; x < n; ++x)
        for (const Edge& e : g.neighbors(x)) {
            if (x >= e.to || p.block_of[x] == p.block_of[e.to]) continue;
            const std::uint32_t at = lca(p.block_of[x], p.block_of[e.to]);
            cut_at[at].push_back({x, e.to, e.weight});
            for (Vertex y : {x, e.to})
                top_depth[y] = std::min(top_depth[y], depth[at]);
        }

    // boundary_origs[node]: vertices needing a fresh cut aux there
    std::vector<std::vector<Vertex>> boundary_origs(nodes);
    for (Vertex x = 0; x < n; ++x) {
        if (top_depth[x] == ~std::uint32_t{0}) continue;
        std::uint32_t cur = p.block_of[x];
        while (depth[cur] > top_depth[x]) {
            boundary_origs[cur].push_back(x);
            if (cur == h.root) break;
            cur = h.parent[cur];
        }
    }
    for (auto& list : boundary_origs) std::sort(list.begin(), list.end());

    std::vector<std::vector<Vertex>> block_verts(h.leaf_count);
    for (Vertex x = 0; x < n; ++x) block_verts[p.block_of[x]].push_back(x);

    std::vector<BlockView> views(nodes);
    // per node: orig -> aux index, split by kind, for port lookups above
    std::vector<std::unordered_map<Vertex, std::uint8_t>> cut_aux_of(nodes), term_aux_of(nodes);

    const auto place_aux = [&](std::uint32_t node, BlockView& view) {
        std::sort(view.aux.begin(), view.aux.end(), [](const ViewAux& a, const ViewAux& b) {
            if (a.orig != b.orig) return a.orig < b.orig;
            return a.kind < b.kind;
        });
        for (std::size_t j = 0; j < view.aux.size(); ++j) {
            auto& slot = view.aux[j].kind == AuxKind::cut ? cut_aux_of[node] : term_aux_of[node];
            slot[view.aux[j].orig] = static_cast<std::uint8_t>(j);
        }
    };

    for (std::uint32_t node = 0; node < nodes; ++node) {
        BlockView& view = views[node];
        view.block = node;
        if (h.is_leaf(node)) {
            const auto& verts = block_verts[node];
            std::unordered_map<Vertex, std::uint32_t> local;
            view.inner.reserve(verts.size());
            for (Vertex x : verts) {
                local[x] = view.inner_count();
                view.inner.push_back({x, -1, 0});
            }
            for (Vertex x : boundary_origs[node]) view.aux.push_back({local[x], x, AuxKind::cut});
            for (Vertex term : {s, t})
                if (local.contains(term)) view.aux.push_back({local[term], term, AuxKind::terminal});
            place_aux(node, view);
            view.adj.resize(view.total_nodes());
            for (Vertex x : verts)
                for (const Edge& e : g.neighbors(x))
                    if (x < e.to && p.block_of[e.to] == node)
                        detail::add_view_edge(view, local[x], local[e.to], e.weight, false);
            for (std::size_t j = 0; j < view.aux.size(); ++j)
                detail::add_view_edge(view, view.aux[j].attach, view.aux_node(static_cast<std::uint32_t>(j)), 0, false);
        } else {
            view.children = h.children[node];
            // ports: each child's boundary aux, in child order then boundary order
            std::vector<std::uint32_t> port_offset(view.children.size());
            for (std::size_t ci = 0; ci < view.children.size(); ++ci) {
                const std::uint32_t c = view.children[ci];
                port_offset[ci] = view.inner_count();
                for (const ViewAux& a : views[c].aux)
                    view.inner.push_back({a.orig, static_cast<std::int32_t>(ci),
                                          static_cast<std::uint8_t>(&a - views[c].aux.data())});
            }
            const auto port_of = [&](Vertex x, AuxKind kind) -> std::uint32_t {
                std::uint32_t cur = p.block_of[x];
                while (h.parent[cur] != node) cur = h.parent[cur];
                std::size_t ci = 0;
                while (view.children[ci] != cur) ++ci;
                const auto& slot = kind == AuxKind::cut ? cut_aux_of[cur] : term_aux_of[cur];
                auto it = slot.find(x);
                if (it == slot.end()) fail(errc::usage, "missing child boundary vertex");
                return port_offset[ci] + it->second;
            };
            for (Vertex x : boundary_origs[node]) view.aux.push_back({port_of(x, AuxKind::cut), x, AuxKind::cut});
            for (Vertex term : {s, t}) {
                std::uint32_t cur = p.block_of[term];
                bool inside = cur == node;
                while (!inside && cur != h.root) {
                    cur = h.parent[cur];
                    inside = cur == node;
                }
                if (inside) view.aux.push_back({port_of(term, AuxKind::terminal), term, AuxKind::terminal});
            }
            place_aux(node, view);
            view.adj.resize(view.total_nodes());
            for (const auto& [x, y, w] : cut_at[node])
                detail::add_view_edge(view, port_of(x, AuxKind::cut), port_of(y, AuxKind::cut), w, false);
            for (std::size_t j = 0; j < view.aux.size(); ++j)
                detail::add_view_edge(view, view.aux[j].attach, view.aux_node(static_cast<std::uint32_t>(j)), 0, false);
            for (std::size_t ci = 0; ci < view.children.size(); ++ci) {
                const std::uint32_t lo = port_offset[ci];
                const std::uint32_t hi = ci + 1 < view.children.size()
                                             ? port_offset[ci + 1]
                                             : view.inner_count();
                for (std::uint32_t a = lo; a < hi; ++a)
                    for (std::uint32_t b = a + 1; b < hi; ++b)
                        detail::add_view_edge(view, a, b, 0, true);
            }
        }
        detail::finish_view(view, boundary_cap);
    }
    return views;
}

} // namespace lpdp
