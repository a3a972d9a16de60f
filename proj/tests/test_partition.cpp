#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "lpdp/bisection.hpp"
#include "lpdp/partition.hpp"
#include "support.hpp"

using namespace lpdp;
using namespace testsupport;

namespace {

// exhaustive minimum over balanced bipartitions, for small n
Weight brute_min_bisection_cut(const Graph& g, std::size_t l_max) {
    const std::size_t n = g.vertex_count();
    Weight best = ~Weight{0};
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        const std::size_t a = static_cast<std::size_t>(std::popcount(mask));
        if (a > l_max || n - a > l_max) continue;
        Partition p;
        p.block_of.resize(n);
        for (std::size_t v = 0; v < n; ++v) p.block_of[v] = (mask >> v) & 1u;
        p.k = 2;
        best = std::min(best, cut_weight(g, p));
    }
    return best;
}

} // namespace

TEST_CASE("k equal one is a single block", "[partition]") {
    const Graph g = random_connected_graph(9, 0.3, 1);
    const auto [p, h] = partition_hier(g, 1, 0.1, 4);
    REQUIRE(p.k == 1);
    for (Vertex v = 0; v < 9; ++v) REQUIRE(p.block_of[v] == 0);
    REQUIRE(h.node_count() == 1);
    REQUIRE(h.root == 0);
    REQUIRE(h.leaf_count == 1);
}

TEST_CASE("eight-vertex unit path splits at the middle", "[partition]") {
    const Graph g = unit_path(8);
    const auto [p, h] = partition_hier(g, 2, 0.0, 11);
    REQUIRE(p.k == 2);
    REQUIRE(p.block_size(0) == 4);
    REQUIRE(p.block_size(1) == 4);
    REQUIRE(cut_weight(g, p) == brute_min_bisection_cut(g, p.l_max));
    REQUIRE(cut_weight(g, p) == Weight{1});
}

TEST_CASE("k equal n gives singletons and full cut", "[partition]") {
    const Graph g = random_connected_graph(8, 0.4, 2);
    const auto [p, h] = partition_hier(g, 8, 0.0, 3, 64);
    REQUIRE(p.k == 8);
    for (std::uint32_t b = 0; b < 8; ++b) REQUIRE(p.block_size(b) == 1);
    REQUIRE(cut_weight(g, p) == g.total_weight());
    REQUIRE(h.leaf_count == 8);
    REQUIRE(h.node_count() == 15);
}

TEST_CASE("cut weight equals a per-edge recount on random partitions", "[partition]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = random_graph(10, 0.4, seed);
        SplitMix64 rng(seed + 1000);
        Partition p;
        p.k = 3;
        p.block_of.resize(10);
        for (auto& b : p.block_of) b = static_cast<std::uint32_t>(rng.below(3));
        Weight manual = 0;
        for (Vertex v = 0; v < 10; ++v)
            for (const Edge& e : g.neighbors(v))
                if (v < e.to && p.block_of[v] != p.block_of[e.to]) manual += e.weight;
        REQUIRE(cut_weight(g, p) == manual);
    }
}

TEST_CASE("leaf balance holds across sizes and epsilons", "[partition]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = random_connected_graph(26 + 3 * static_cast<Vertex>(seed), 0.2, seed);
        for (const std::uint32_t k : {2u, 4u, 8u}) {
            const auto [p, h] = partition_hier(g, k, 0.10, seed, 64);
            const std::size_t cap = balance_cap(g.vertex_count(), k, 0.10);
            for (std::uint32_t b = 0; b < p.k; ++b) {
                REQUIRE(p.block_size(b) <= cap);
                REQUIRE(p.block_size(b) >= 1);
            }
        }
    }
}

TEST_CASE("hierarchy children partition their parent", "[partition]") {
    const Graph g = grid_graph(6, 6);
    const auto [p, h] = partition_hier(g, 4, 0.1, 17, 64);
    check_hierarchy(h);
    // reconstruct per-node vertex sets bottom-up
    std::vector<std::vector<Vertex>> sets(h.node_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) sets[p.block_of[v]].push_back(v);
    for (std::uint32_t node = h.leaf_count; node < h.node_count(); ++node) {
        std::size_t child_total = 0;
        for (std::uint32_t c : h.children[node]) {
            child_total += sets[c].size();
            sets[node].insert(sets[node].end(), sets[c].begin(), sets[c].end());
        }
        std::sort(sets[node].begin(), sets[node].end());
        REQUIRE(std::adjacent_find(sets[node].begin(), sets[node].end()) == sets[node].end());
        REQUIRE(sets[node].size() == child_total);
    }
    REQUIRE(sets[h.root].size() == g.vertex_count());
}

TEST_CASE("ladder graphs admit a two-edge cut", "[partition]") {
    const Graph g = grid_graph(2, 8);
    const auto [p, h] = partition_hier(g, 2, 0.0, 21);
    REQUIRE(cut_weight(g, p) <= Weight{2});
}

TEST_CASE("k above n is infeasible", "[partition]") {
    const Graph g = unit_path(4);
    REQUIRE_THROWS_AS(partition_hier(g, 8, 0.0, 1), error);
    try {
        partition_hier(g, 8, 0.0, 1);
    } catch (const error& e) {
        REQUIRE(e.code() == errc::infeasible_balance);
    }
    REQUIRE_THROWS_AS(partition_hier(g, 3, 0.0, 1), error); // not a power of two
}

TEST_CASE("partition files load and round-trip", "[partition]") {
    const Graph g = unit_path(4);
    const Partition p = load_partition("0\n0\n1\n1\n", g, 0.0);
    REQUIRE(p.k == 2);
    REQUIRE(p.block_of == std::vector<std::uint32_t>({0, 0, 1, 1}));
    REQUIRE(emit_partition(p) == "0\n0\n1\n1\n");

    const Partition all_zero = load_partition("0\n0\n0\n0\n", g, 0.0);
    REQUIRE(all_zero.k == 1);

    REQUIRE_THROWS_AS(load_partition("0\n0\n1\n", g, 0.0), error);
    try {
        load_partition("0\n0\n1\n", g, 0.0);
    } catch (const error& e) {
        REQUIRE(e.code() == errc::line_count_mismatch);
    }
    try {
        load_partition("0\n0\n2\n2\n", g, 0.0);
    } catch (const error& e) {
        REQUIRE(e.code() == errc::non_contiguous_block_ids);
    }
    try {
        load_partition("0\n0\n0\n1\n", g, 0.0);
    } catch (const error& e) {
        REQUIRE(e.code() == errc::balance_violated);
    }
    // the override flag downgrades the balance failure
    const Partition loose = load_partition("0\n0\n0\n1\n", g, 0.0, true);
    REQUIRE(loose.k == 2);
}

TEST_CASE("boundary guard re-bisects once then gives up", "[partition]") {
    // complete graph: every vertex of every block is on the boundary
    std::vector<EdgeTriple> edges;
    for (Vertex u = 0; u < 8; ++u)
        for (Vertex v = u + 1; v < 8; ++v) edges.emplace_back(u, v, 1);
    const Graph k8 = Graph::from_edges(8, edges);

    // cap 2: size-4 blocks violate it, the one allowed split fixes it (k becomes 4)
    const auto [p, h] = partition_hier(k8, 2, 0.1, 5, 2);
    REQUIRE(p.k == 4);
    REQUIRE(h.leaf_count == 4);
    for (std::uint32_t b = 0; b < p.k; ++b) {
        REQUIRE(p.block_size(b) == 2);
        REQUIRE(lpdp::detail::block_boundary_size(k8, p.block_of, b) <= 2);
    }
    REQUIRE(p.l_max == balance_cap(8, 2, 0.1)); // bound stays the requested k's

    // cap 1 cannot be met even after the split
    try {
        partition_hier(k8, 2, 0.1, 5, 1);
        FAIL("expected BoundaryTooLarge");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::boundary_too_large);
    }
}

TEST_CASE("flat hierarchy shape", "[partition]") {
    const Hierarchy h = flat_hierarchy(4);
    check_hierarchy(h);
    REQUIRE(h.leaf_count == 4);
    REQUIRE(h.node_count() == 5);
    REQUIRE(h.root == 4);
    REQUIRE(h.children[4].size() == 4);
}

TEST_CASE("partitioning is deterministic in its seed", "[partition]") {
    const Graph g = grid_graph(5, 7);
    const auto [p1, h1] = partition_hier(g, 4, 0.1, 33, 64);
    const auto [p2, h2] = partition_hier(g, 4, 0.1, 33, 64);
    REQUIRE(p1.block_of == p2.block_of);
    REQUIRE(h1.parent == h2.parent);
}
