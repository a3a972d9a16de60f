#pragma once

#include <chrono>
#include <cstdint>
#include <utility>
#include <vector>

#include "lpdp/bisection.hpp"
#include "lpdp/block_view.hpp"
#include "lpdp/graph.hpp"
#include "lpdp/partition.hpp"
#include "lpdp/preprocess.hpp"
#include "lpdp/solution.hpp"

namespace lpdp {

struct LpdpConfig {
    std::uint32_t k = 0; // block count; 0 picks one targeting ~64 vertices/leaf
    double epsilon = 0.10;
    int boundary_cap = 12;
    std::uint64_t seed = 1;
    double time_limit = 0.0; // seconds; <=0 means unlimited
    bool flat = false;       // one combination level over all leaves
    bool rule_end_above_root = true;
    bool rule_roots_increasing = true;
    bool prune_dominated = true;
    std::size_t max_table_entries = BlockTable::default_max_entries;
    const Partition* partition = nullptr; // preset flat partition (external)
};

inline std::uint32_t auto_block_count(std::size_t n) {
    std::uint32_t k = 2;
    while (static_cast<std::size_t>(k) * 64 < n) k <<= 1;
    return k;
}

// Partition -> per-block views -> bottom-up segment-DFS tables -> root query
// for the terminal pair -> witness expansion. Exact; Timeout only via the
// cooperative deadline.
inline Solution lpdp_solve(const Instance& inst, const LpdpConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto since = [](std::chrono::steady_clock::time_point from) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
    };
    const Graph& g = inst.graph;
    Solution sol;
    try {
        const auto p0 = std::chrono::steady_clock::now();
        Partition part;
        Hierarchy hier;
        if (cfg.partition) {
            part = *cfg.partition;
            hier = cfg.flat ? flat_hierarchy(part.k) : pair_hierarchy(g, part);
        } else {
            const std::uint32_t k = cfg.k ? cfg.k : auto_block_count(g.vertex_count());
            auto [p, h] = partition_hier(g, k, cfg.epsilon, cfg.seed,
                                         static_cast<std::size_t>(cfg.boundary_cap));
            part = std::move(p);
            hier = cfg.flat ? flat_hierarchy(part.k) : std::move(h);
        }
        sol.partition_seconds = since(p0);

        const auto views = build_views(g, part, hier, inst.source, inst.target, cfg.boundary_cap);
        PreprocessLimits lim;
        lim.rule_end_above_root = cfg.rule_end_above_root;
        lim.rule_roots_increasing = cfg.rule_roots_increasing;
        lim.prune_dominated = cfg.prune_dominated;
        lim.max_table_entries = cfg.max_table_entries;
        if (cfg.time_limit > 0) lim.deadline = Deadline::after(cfg.time_limit);

        std::vector<BlockTable> tables;
        tables.reserve(views.size());
        std::vector<const BlockTable*> child_ptrs;
        for (const BlockView& view : views) {
            child_ptrs.clear();
            for (std::uint32_t c : view.children) child_ptrs.push_back(&tables[c]);
            tables.push_back(preprocess_block(view, child_ptrs, lim, &sol.expanded));
        }

        MatchKey terminals;
        terminals.add_pair(0, 1);
        const auto best = tables[hier.root].query(terminals, 0);
        if (!best) {
            sol.status = SolveStatus::no_path;
        } else {
            sol.weight = *best;
            sol.path = reconstruct_path(views, tables, hier.root, inst.source, inst.target);
            const Verdict v = validate_path(g, sol.path, inst.source, inst.target);
            if (!v.valid || v.weight != sol.weight)
                fail(errc::witness_missing, "reconstructed path failed validation");
            sol.status = SolveStatus::solved;
        }
    } catch (const timeout_error&) {
        sol.status = SolveStatus::timeout;
        sol.weight = 0;
        sol.path.clear();
    }
    sol.seconds = since(t0);
    return sol;
}

} // namespace lpdp
