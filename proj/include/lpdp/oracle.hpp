#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "lpdp/block_table.hpp"
#include "lpdp/block_view.hpp"
#include "lpdp/graph.hpp"
#include "lpdp/solution.hpp"

namespace lpdp {

namespace detail {

struct ExhDfs {
    const Graph& g;
    Vertex target;
    Deadline deadline;
    std::vector<std::uint8_t> visited;
    Path cur;
    std::optional<Weight> best;
    Path best_path;
    std::uint64_t expanded = 0;
    bool timed_out = false;

    void run(Vertex u, Weight w) {
        if (timed_out) return;
        if ((++expanded & 0xffff) == 0 && deadline.expired()) {
            timed_out = true;
            return;
        }
        if (u == target) {
            if (!best || w > *best) {
                best = w;
                best_path = cur;
            }
            return; // extending past the target can never return to it
        }
        for (const Edge& e : g.neighbors(u)) {
            if (visited[e.to]) continue;
            visited[e.to] = 1;
            cur.push_back(e.to);
            run(e.to, w + e.weight);
            cur.pop_back();
            visited[e.to] = 0;
            if (timed_out) return;
        }
    }
};

} // namespace detail

// Plain exhaustive search over all simple s-t paths; vertices unmark on
// backtrack. The correctness oracle for every other solver.
inline Solution exhaustive_dfs(const Instance& inst, Deadline deadline = Deadline::none()) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::ExhDfs dfs{inst.graph, inst.target, deadline, {}, {}, {}, {}, 0, false};
    dfs.visited.assign(inst.graph.vertex_count(), 0);
    dfs.visited[inst.source] = 1;
    dfs.cur.push_back(inst.source);
    dfs.run(inst.source, 0);

    Solution sol;
    sol.expanded = dfs.expanded;
    if (dfs.timed_out) {
        sol.status = SolveStatus::timeout;
    } else if (dfs.best) {
        sol.status = SolveStatus::solved;
        sol.weight = *dfs.best;
        sol.path = std::move(dfs.best_path);
    } else {
        sol.status = SolveStatus::no_path;
    }
    sol.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

namespace detail {

// One aux-to-aux simple path: which view nodes it occupies, which boundary
// aux its vertex usage implies, and its weight.
struct OraclePath {
    std::uint32_t node_mask = 0;
    BoundaryMask faux = 0;
    Weight weight = 0;
};

inline void oracle_paths(const BlockView& view, std::uint32_t from_aux, std::vector<std::vector<OraclePath>>& per_pair,
                         std::size_t pair_base) {
    struct Walker {
        const BlockView& view;
        std::uint32_t from_aux;
        std::vector<std::vector<OraclePath>>& per_pair;
        std::size_t pair_base;
        std::uint32_t mask = 0;
        BoundaryMask faux = 0;

        void step(std::uint32_t u, Weight w) {
            for (const ViewEdge& e : view.adj[u]) {
                if (mask & (std::uint32_t{1} << e.to)) continue;
                if (view.is_aux_node(e.to)) {
                    const std::uint32_t b = static_cast<std::uint32_t>(view.aux_index(e.to));
                    if (b <= from_aux) continue;
                    per_pair[pair_base + (b - from_aux - 1)].push_back(
                        {mask | (std::uint32_t{1} << e.to),
                         faux | view.node_faux[e.to], w + e.weight});
                    continue;
                }
                mask |= std::uint32_t{1} << e.to;
                const BoundaryMask saved = faux;
                faux |= view.node_faux[e.to];
                step(e.to, w + e.weight);
                faux = saved;
                mask &= ~(std::uint32_t{1} << e.to);
            }
        }
    };
    Walker walker{view, from_aux, per_pair, pair_base};
    const std::uint32_t start = view.aux_node(from_aux);
    walker.mask = std::uint32_t{1} << start;
    walker.faux = view.node_faux[start];
    walker.step(start, 0);
}

} // namespace detail

// Independent table oracle: enumerates every simple path between every
// boundary pair, then every vertex-disjoint combination of them. Leaf views
// only; limited to 8 boundary / 16 total nodes.
inline BlockTable brute_force_block_table(const BlockView& view) {
    if (view.aux.size() > 8 || view.total_nodes() > 16 || !view.children.empty())
        fail(errc::too_large, "brute-force table limited to leaf views with <=8 boundary, <=16 nodes");
    const std::uint32_t beta = static_cast<std::uint32_t>(view.aux.size());

    // per_pair[(a,b)] in lex order: index = base(a) + (b - a - 1)
    std::vector<std::size_t> base(beta, 0);
    std::size_t pairs = 0;
    for (std::uint32_t a = 0; a < beta; ++a) {
        base[a] = pairs;
        pairs += beta - a - 1;
    }
    std::vector<std::vector<detail::OraclePath>> per_pair(pairs);
    for (std::uint32_t a = 0; a < beta; ++a) detail::oracle_paths(view, a, per_pair, base[a]);

    BlockTable table(static_cast<int>(beta));
    std::vector<std::pair<std::uint8_t, std::uint8_t>> chosen;

    struct Combiner {
        const std::vector<std::vector<detail::OraclePath>>& per_pair;
        const std::vector<std::size_t>& base;
        std::uint32_t beta;
        BlockTable& table;
        std::vector<std::pair<std::uint8_t, std::uint8_t>>& chosen;

        void combine(std::size_t next, std::uint32_t used, BoundaryMask faux, Weight w) {
            table.insert(make_match_key(chosen), faux, w);
            for (std::size_t pi = next; pi < per_pair.size(); ++pi) {
                // recover (a,b) from the flat pair index
                std::uint32_t a = 0;
                while (a + 1 < beta && base[a + 1] <= pi) ++a;
                const std::uint32_t b = a + 1 + static_cast<std::uint32_t>(pi - base[a]);
                chosen.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
                for (const detail::OraclePath& path : per_pair[pi]) {
                    if (path.node_mask & used) continue;
                    combine(pi + 1, used | path.node_mask, faux | path.faux, w + path.weight);
                }
                chosen.pop_back();
            }
        }
    };
    Combiner{per_pair, base, beta, table, chosen}.combine(0, 0, 0, 0);
    table.freeze();
    return table;
}

} // namespace lpdp
