#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lpdp/graph.hpp"
#include "lpdp/partition.hpp"
#include "lpdp/rng.hpp"

namespace lpdp {

namespace detail {

// Working graph for one bisection call: nodes carry vertex counts so coarse
// levels can respect the balance range exactly.
struct CoarseGraph {
    std::vector<std::size_t> node_weight;
    std::vector<std::vector<std::pair<std::uint32_t, Weight>>> adj; // aggregated, ascending node id
    std::size_t node_count() const { return node_weight.size(); }
};

inline Weight side_cut(const CoarseGraph& cg, const std::vector<std::uint8_t>& side) {
    Weight cut = 0;
    for (std::uint32_t u = 0; u < cg.node_count(); ++u)
        for (const auto& [v, w] : cg.adj[u])
            if (u < v && side[u] != side[v]) cut += w;
    return cut;
}

// Heavy-edge matching contraction. Pairs whose merged weight would exceed
// `max_node` stay unmatched so coarse nodes remain placeable.
inline CoarseGraph contract(const CoarseGraph& cg, std::size_t max_node, SplitMix64& rng,
                            std::vector<std::uint32_t>& coarse_of) {
    const std::uint32_t n = static_cast<std::uint32_t>(cg.node_count());
    std::vector<std::uint32_t> visit(n);
    std::iota(visit.begin(), visit.end(), 0);
    for (std::uint32_t i = n; i > 1; --i) std::swap(visit[i - 1], visit[rng.below(i)]);

    constexpr std::uint32_t kUnmatched = 0xffffffffu;
    std::vector<std::uint32_t> mate(n, kUnmatched);
    for (std::uint32_t u : visit) {
        if (mate[u] != kUnmatched) continue;
        std::uint32_t best = kUnmatched;
        Weight best_w = 0;
        for (const auto& [v, w] : cg.adj[u]) {
            if (mate[v] != kUnmatched) continue;
            if (cg.node_weight[u] + cg.node_weight[v] > max_node) continue;
            if (best == kUnmatched || w > best_w || (w == best_w && v < best)) {
                best = v;
                best_w = w;
            }
        }
        if (best != kUnmatched) {
            mate[u] = best;
            mate[best] = u;
        }
    }

    coarse_of.assign(n, 0);
    std::uint32_t next = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        if (mate[u] != kUnmatched && mate[u] < u) { coarse_of[u] = coarse_of[mate[u]]; continue; }
        coarse_of[u] = next++;
    }

    CoarseGraph out;
    out.node_weight.assign(next, 0);
    out.adj.assign(next, {});
    for (std::uint32_t u = 0; u < n; ++u) out.node_weight[coarse_of[u]] += cg.node_weight[u];
    std::vector<std::pair<std::uint32_t, Weight>> buf;
    for (std::uint32_t cu = 0; cu < next; ++cu) {
        buf.clear();
        for (std::uint32_t u = 0; u < n; ++u) {
            if (coarse_of[u] != cu) continue;
            for (const auto& [v, w] : cg.adj[u])
                if (coarse_of[v] != cu) buf.emplace_back(coarse_of[v], w);
        }
        std::sort(buf.begin(), buf.end());
        for (std::size_t i = 0; i < buf.size(); ++i) {
            if (!out.adj[cu].empty() && out.adj[cu].back().first == buf[i].first)
                out.adj[cu].back().second += buf[i].second;
            else
                out.adj[cu].push_back(buf[i]);
        }
    }
    return out;
}

// Greedy region growing from a random start toward half the total weight,
// staying within [lo, hi]; falls back to first-fit-decreasing if growth gets
// stuck. Returns false only if even the fallback cannot land in range.
inline bool grow_bisection(const CoarseGraph& cg, std::size_t lo, std::size_t hi, SplitMix64& rng,
                           std::vector<std::uint8_t>& side) {
    const std::uint32_t n = static_cast<std::uint32_t>(cg.node_count());
    const std::size_t total = std::accumulate(cg.node_weight.begin(), cg.node_weight.end(), std::size_t{0});
    const std::size_t target = std::clamp(total / 2, lo, hi);

    side.assign(n, 1);
    std::vector<Weight> link(n, 0);
    std::vector<std::uint32_t> in_count(n, 0);
    std::size_t grown = 0;
    const std::uint32_t start = static_cast<std::uint32_t>(rng.below(n));

    const auto add = [&](std::uint32_t u) {
        side[u] = 0;
        grown += cg.node_weight[u];
        for (const auto& [v, w] : cg.adj[u]) {
            link[v] += w;
            ++in_count[v];
        }
    };
    add(start);
    while (grown < target) {
        // strongest attachment first; tie-break toward nodes that leave the
        // fewest edges dangling so growth hugs the region instead of a raster
        std::uint32_t best = 0xffffffffu;
        Weight best_link = 0;
        std::size_t best_ext = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (side[v] == 0 || grown + cg.node_weight[v] > hi) continue;
            const std::size_t ext = cg.adj[v].size() - in_count[v];
            if (best == 0xffffffffu || link[v] > best_link ||
                (link[v] == best_link && ext < best_ext)) {
                best = v;
                best_link = link[v];
                best_ext = ext;
            }
        }
        if (best == 0xffffffffu) break;
        add(best);
    }
    if (grown >= lo && grown <= hi && total - grown >= lo && total - grown <= hi) return true;

    // first-fit decreasing into side 0 until it reaches lo
    side.assign(n, 1);
    grown = 0;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (cg.node_weight[a] != cg.node_weight[b]) return cg.node_weight[a] > cg.node_weight[b];
        return a < b;
    });
    for (std::uint32_t u : order) {
        if (grown >= lo) break;
        if (grown + cg.node_weight[u] <= hi) {
            side[u] = 0;
            grown += cg.node_weight[u];
        }
    }
    return grown >= lo && grown <= hi && total - grown >= lo && total - grown <= hi;
}

// One hill-climbing round: best single move, then best pairwise swap. Swaps
// matter when the range is tight (exact balance) and single moves are illegal.
inline bool refine_round(const CoarseGraph& cg, std::size_t lo, std::size_t hi,
                         std::vector<std::uint8_t>& side) {
    const std::uint32_t n = static_cast<std::uint32_t>(cg.node_count());
    std::size_t w0 = 0, w1 = 0;
    for (std::uint32_t u = 0; u < n; ++u) (side[u] ? w1 : w0) += cg.node_weight[u];

    std::vector<long long> gain(n, 0); // external minus internal connection
    std::vector<std::uint32_t> border[2];
    for (std::uint32_t u = 0; u < n; ++u) {
        bool external = false;
        for (const auto& [v, w] : cg.adj[u]) {
            if (side[v] != side[u]) {
                gain[u] += static_cast<long long>(w);
                external = true;
            } else {
                gain[u] -= static_cast<long long>(w);
            }
        }
        if (external) border[side[u]].push_back(u);
    }

    std::uint32_t best_u = 0xffffffffu;
    long long best_gain = 0;
    for (int s = 0; s < 2; ++s)
        for (std::uint32_t u : border[s]) {
            const std::size_t from = side[u] ? w1 : w0, to = side[u] ? w0 : w1;
            if (from < cg.node_weight[u] + lo || to + cg.node_weight[u] > hi) continue;
            if (best_u == 0xffffffffu || gain[u] > best_gain) {
                best_u = u;
                best_gain = gain[u];
            }
        }
    if (best_u != 0xffffffffu && best_gain > 0) {
        side[best_u] ^= 1;
        return true;
    }

    std::uint32_t su = 0xffffffffu, sv = 0xffffffffu;
    long long best_swap = 0;
    for (std::uint32_t u : border[0])
        for (std::uint32_t v : border[1]) {
            if (cg.node_weight[u] != cg.node_weight[v]) {
                const std::size_t n0 = w0 - cg.node_weight[u] + cg.node_weight[v];
                const std::size_t n1 = w1 - cg.node_weight[v] + cg.node_weight[u];
                if (n0 < lo || n0 > hi || n1 < lo || n1 > hi) continue;
            }
            Weight uv = 0;
            for (const auto& [x, w] : cg.adj[u])
                if (x == v) { uv = w; break; }
            const long long g = gain[u] + gain[v] - 2 * static_cast<long long>(uv);
            if (g > best_swap) {
                best_swap = g;
                su = u;
                sv = v;
            }
        }
    if (su != 0xffffffffu && best_swap > 0) {
        side[su] ^= 1;
        side[sv] ^= 1;
        return true;
    }
    return false;
}

inline void refine(const CoarseGraph& cg, std::size_t lo, std::size_t hi, std::vector<std::uint8_t>& side) {
    const std::size_t rounds = 2 * cg.node_count() + 8;
    for (std::size_t r = 0; r < rounds; ++r)
        if (!refine_round(cg, lo, hi, side)) break;
}

// Multilevel bisection of `cg` into sides whose vertex weights land in
// [lo, hi]. Throws InfeasibleBalance when no split can.
inline std::vector<std::uint8_t> bisect(const CoarseGraph& cg, std::size_t lo, std::size_t hi, SplitMix64& rng) {
    if (cg.node_count() == 1) fail(errc::infeasible_balance, "cannot split a single node");

    std::vector<CoarseGraph> levels{cg};
    std::vector<std::vector<std::uint32_t>> maps;
    while (levels.back().node_count() > 48) {
        std::vector<std::uint32_t> coarse_of;
        CoarseGraph next = contract(levels.back(), hi, rng, coarse_of);
        if (next.node_count() >= levels.back().node_count()) break;
        maps.push_back(std::move(coarse_of));
        levels.push_back(std::move(next));
    }

    const CoarseGraph& bottom = levels.back();
    std::vector<std::uint8_t> best_side;
    Weight best_cut = 0;
    constexpr int kTrials = 4;
    for (int trial = 0; trial < kTrials; ++trial) {
        std::vector<std::uint8_t> side;
        if (!grow_bisection(bottom, lo, hi, rng, side)) continue;
        refine(bottom, lo, hi, side);
        const Weight cut = side_cut(bottom, side);
        if (best_side.empty() || cut < best_cut) {
            best_side = std::move(side);
            best_cut = cut;
        }
    }
    if (best_side.empty()) {
        // coarse nodes can be too chunky for a tight range; unit weights never are
        levels.resize(1);
        maps.clear();
        if (!grow_bisection(levels[0], lo, hi, rng, best_side))
            fail(errc::infeasible_balance, "no bisection satisfies the balance range");
        refine(levels[0], lo, hi, best_side);
    }

    for (std::size_t lvl = levels.size(); lvl-- > 1;) {
        const std::vector<std::uint32_t>& coarse_of = maps[lvl - 1];
        std::vector<std::uint8_t> finer(levels[lvl - 1].node_count());
        for (std::uint32_t u = 0; u < finer.size(); ++u) finer[u] = best_side[coarse_of[u]];
        best_side = std::move(finer);
        refine(levels[lvl - 1], lo, hi, best_side);
    }
    return best_side;
}

struct BisectTreeNode {
    int left = -1, right = -1;          // indices into the tree pool; -1 for leaves
    std::vector<Vertex> verts;          // leaves only
};

// Recursive bisection; returns the pool index of the subtree root. `c` is the
// number of leaves this vertex set must still produce.
inline int bisect_rec(const Graph& g, std::vector<Vertex> verts, std::uint32_t c, std::size_t l_max,
                      SplitMix64& rng, std::vector<BisectTreeNode>& pool) {
    if (c == 1) {
        pool.push_back(BisectTreeNode{-1, -1, std::move(verts)});
        return static_cast<int>(pool.size()) - 1;
    }
    const std::size_t total = verts.size();
    const std::uint32_t half = c / 2;
    const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(half) * l_max, total - half);
    const std::size_t lo = std::max<std::size_t>(half, total >= hi ? total - hi : 0);
    if (lo > hi) fail(errc::infeasible_balance, "balance range empty at an internal split");

    // induced subgraph on verts, unit node weights
    std::vector<std::uint32_t> local(g.vertex_count(), 0xffffffffu);
    for (std::uint32_t i = 0; i < verts.size(); ++i) local[verts[i]] = i;
    CoarseGraph cg;
    cg.node_weight.assign(verts.size(), 1);
    cg.adj.assign(verts.size(), {});
    for (std::uint32_t i = 0; i < verts.size(); ++i)
        for (const Edge& e : g.neighbors(verts[i]))
            if (local[e.to] != 0xffffffffu) cg.adj[i].emplace_back(local[e.to], e.weight);

    const std::vector<std::uint8_t> side = bisect(cg, lo, hi, rng);
    std::vector<Vertex> a, b;
    for (std::uint32_t i = 0; i < verts.size(); ++i) (side[i] ? b : a).push_back(verts[i]);

    const int left = bisect_rec(g, std::move(a), half, l_max, rng, pool);
    const int right = bisect_rec(g, std::move(b), half, l_max, rng, pool);
    pool.push_back(BisectTreeNode{left, right, {}});
    return static_cast<int>(pool.size()) - 1;
}

inline void number_tree(const std::vector<BisectTreeNode>& pool, int node, std::uint32_t& next_leaf,
                        std::vector<std::uint32_t>& leaf_id_of_pool) {
    const BisectTreeNode& tn = pool[node];
    if (tn.left < 0) {
        leaf_id_of_pool[node] = next_leaf++;
        return;
    }
    number_tree(pool, tn.left, next_leaf, leaf_id_of_pool);
    number_tree(pool, tn.right, next_leaf, leaf_id_of_pool);
}

inline std::uint32_t build_hier(const std::vector<BisectTreeNode>& pool, int node,
                                const std::vector<std::uint32_t>& leaf_id_of_pool, std::uint32_t& next_internal,
                                Hierarchy& h) {
    const BisectTreeNode& tn = pool[node];
    if (tn.left < 0) return leaf_id_of_pool[node];
    const std::uint32_t l = build_hier(pool, tn.left, leaf_id_of_pool, next_internal, h);
    const std::uint32_t r = build_hier(pool, tn.right, leaf_id_of_pool, next_internal, h);
    const std::uint32_t me = next_internal++;
    h.parent[l] = me;
    h.parent[r] = me;
    h.children[me] = {l, r};
    return me;
}

// Number of vertices in block `b` with at least one neighbor outside it.
inline std::size_t block_boundary_size(const Graph& g, const std::vector<std::uint32_t>& block_of, std::uint32_t b) {
    std::size_t count = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (block_of[v] != b) continue;
        for (const Edge& e : g.neighbors(v))
            if (block_of[e.to] != b) {
                ++count;
                break;
            }
    }
    return count;
}

} // namespace detail

// Multilevel recursive bisection into k blocks (k a power of two) with the
// binary hierarchy that falls out of the recursion. Any leaf whose boundary
// exceeds `boundary_cap` is re-bisected once; a second violation throws
// BoundaryTooLarge. The balance bound is the one for the requested k, so
// re-bisected leaves never invalidate it.
inline std::pair<Partition, Hierarchy> partition_hier(const Graph& g, std::uint32_t k, double epsilon,
                                                      std::uint64_t seed = 1, std::size_t boundary_cap = 12) {
    const std::size_t n = g.vertex_count();
    if (k == 0 || (k & (k - 1)) != 0) fail(errc::usage, "k must be a positive power of two");
    if (k > n) fail(errc::infeasible_balance, "k exceeds the vertex count");
    if (!(epsilon >= 0.0)) fail(errc::usage, "epsilon must be nonnegative");

    const std::size_t l_max = balance_cap(n, k, epsilon);
    SplitMix64 rng(seed);

    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<detail::BisectTreeNode> pool;
    const int root = detail::bisect_rec(g, std::move(all), k, l_max, rng, pool);

    // boundary guard: split an oversized leaf once, in place in the tree
    {
        std::vector<int> leaf_pool_ids;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            if (pool[node].left < 0) {
                leaf_pool_ids.push_back(node);
            } else {
                stack.push_back(pool[node].right);
                stack.push_back(pool[node].left);
            }
        }
        std::vector<std::uint32_t> tmp_block(n, 0);
        for (std::size_t i = 0; i < leaf_pool_ids.size(); ++i)
            for (Vertex v : pool[leaf_pool_ids[i]].verts) tmp_block[v] = static_cast<std::uint32_t>(i);

        for (std::size_t i = 0; i < leaf_pool_ids.size(); ++i) {
            const int pn = leaf_pool_ids[i];
            if (detail::block_boundary_size(g, tmp_block, static_cast<std::uint32_t>(i)) <= boundary_cap) continue;
            if (pool[pn].verts.size() < 2)
                fail(errc::boundary_too_large, "block boundary exceeds the cap and cannot be split further");
            // split as evenly as possible: the point is to shed boundary, not cut
            const std::vector<Vertex> verts = std::move(pool[pn].verts);
            std::vector<std::uint32_t> local(n, 0xffffffffu);
            for (std::uint32_t j = 0; j < verts.size(); ++j) local[verts[j]] = j;
            detail::CoarseGraph cg;
            cg.node_weight.assign(verts.size(), 1);
            cg.adj.assign(verts.size(), {});
            for (std::uint32_t j = 0; j < verts.size(); ++j)
                for (const Edge& e : g.neighbors(verts[j]))
                    if (local[e.to] != 0xffffffffu) cg.adj[j].emplace_back(local[e.to], e.weight);
            const std::size_t lo = verts.size() / 2;
            const std::vector<std::uint8_t> side = detail::bisect(cg, lo, verts.size() - lo, rng);
            detail::BisectTreeNode a, b;
            for (std::uint32_t j = 0; j < verts.size(); ++j) (side[j] ? b : a).verts.push_back(verts[j]);
            pool[pn].verts.clear();
            pool.push_back(std::move(a));
            pool[pn].left = static_cast<int>(pool.size()) - 1;
            pool.push_back(std::move(b));
            pool[pn].right = static_cast<int>(pool.size()) - 1;
        }
    }

    // renumber: leaves left to right, internals post-order after them
    std::uint32_t leaf_count = 0;
    std::vector<std::uint32_t> leaf_id_of_pool(pool.size(), 0);
    detail::number_tree(pool, root, leaf_count, leaf_id_of_pool);

    Hierarchy h;
    h.leaf_count = leaf_count;
    const std::uint32_t internal_count = leaf_count - 1; // binary tree
    h.parent.assign(leaf_count + internal_count, 0);
    h.children.assign(leaf_count + internal_count, {});
    std::uint32_t next_internal = leaf_count;
    h.root = detail::build_hier(pool, root, leaf_id_of_pool, next_internal, h);
    h.parent[h.root] = h.root;

    Partition p;
    p.block_of.assign(n, 0);
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i].left < 0)
            for (Vertex v : pool[i].verts) p.block_of[v] = leaf_id_of_pool[i];
    p.k = leaf_count;
    p.epsilon = epsilon;
    p.l_max = l_max;

    // the re-bisected leaves must now satisfy the cap
    for (std::uint32_t b = 0; b < leaf_count; ++b)
        if (detail::block_boundary_size(g, p.block_of, b) > boundary_cap)
            fail(errc::boundary_too_large,
                 "block " + std::to_string(b) + " still exceeds the boundary cap after one re-bisection; "
                 "use a smaller k or supply an external partition");
    check_hierarchy(h);
    return {std::move(p), std::move(h)};
}

} // namespace lpdp
