#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "lpdp/bisection.hpp"
#include "lpdp/block_view.hpp"
#include "support.hpp"

using namespace lpdp;
using namespace testsupport;

namespace {
Partition trivial_partition(std::size_t n) {
    return {std::vector<std::uint32_t>(n, 0), 1, 0.0, n};
}
} // namespace

TEST_CASE("single block exposes exactly the two terminals", "[views]") {
    const Graph g = unit_path(4);
    const auto views = build_views(g, trivial_partition(4), flat_hierarchy(1), 0, 3);
    REQUIRE(views.size() == 1);
    const BlockView& v = views[0];
    REQUIRE(v.inner.size() == 4);
    REQUIRE(v.aux.size() == 2);
    REQUIRE(v.aux[0].kind == AuxKind::terminal);
    REQUIRE(v.aux[1].kind == AuxKind::terminal);
    REQUIRE(v.aux[0].orig == 0);
    REQUIRE(v.aux[1].orig == 3);
}

TEST_CASE("split path exposes terminals and cut attachments per block", "[views]") {
    // 0-1-2-3 unit weights, blocks {0,1} and {2,3}, s=0, t=3
    const Graph g = unit_path(4);
    const Partition p{{0, 0, 1, 1}, 2, 0.0, 2};
    const auto views = build_views(g, p, flat_hierarchy(2), 0, 3);
    REQUIRE(views.size() == 3);

    const BlockView& b0 = views[0];
    REQUIRE(b0.aux.size() == 2);
    REQUIRE(b0.aux[0].orig == 0);
    REQUIRE(b0.aux[0].kind == AuxKind::terminal);
    REQUIRE(b0.aux[1].orig == 1);
    REQUIRE(b0.aux[1].kind == AuxKind::cut);

    const BlockView& b1 = views[1];
    REQUIRE(b1.aux.size() == 2);
    REQUIRE(b1.aux[0].orig == 2);
    REQUIRE(b1.aux[0].kind == AuxKind::cut);
    REQUIRE(b1.aux[1].orig == 3);
    REQUIRE(b1.aux[1].kind == AuxKind::terminal);

    // root: four child ports inner, two terminal aux, the one cut edge kept
    // at original weight
    const BlockView& root = views[2];
    REQUIRE(root.children == std::vector<std::uint32_t>{0, 1});
    REQUIRE(root.inner.size() == 4);
    REQUIRE(root.aux.size() == 2);
    std::size_t cut_edges = 0, clique_edges = 0;
    for (std::uint32_t u = 0; u < root.total_nodes(); ++u)
        for (const ViewEdge& e : root.adj[u]) {
            if (e.to < u) continue;
            if (e.clique) {
                ++clique_edges;
            } else if (e.weight > 0) {
                ++cut_edges;
                const Vertex a = root.node_orig(u), b = root.node_orig(e.to);
                REQUIRE(std::min(a, b) == 1);
                REQUIRE(std::max(a, b) == 2);
                REQUIRE(e.weight == 1);
            }
        }
    REQUIRE(cut_edges == 1);
    REQUIRE(clique_edges == 2); // one pair of ports per child
}

TEST_CASE("terminal on a cut vertex carries both attachments", "[views]") {
    // 0-1-2 split as {0,1},{2} with t=1: vertex 1 has a cut edge AND is a terminal
    const Graph g = unit_path(3);
    const Partition p{{0, 0, 1}, 2, 0.0, 2};
    const auto views = build_views(g, p, flat_hierarchy(2), 0, 1);
    const BlockView& b0 = views[0];
    REQUIRE(b0.aux.size() == 3);
    REQUIRE(b0.aux[1].orig == 1);
    REQUIRE(b0.aux[1].kind == AuxKind::cut);
    REQUIRE(b0.aux[2].orig == 1);
    REQUIRE(b0.aux[2].kind == AuxKind::terminal);
    // visiting vertex 1 touches both of its aux
    REQUIRE(b0.node_faux[1] == (BoundaryMask{0b110}));
}

TEST_CASE("leaf boundary count equals cut-vertex count plus two", "[views]") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Graph g = random_connected_graph(20, 0.15, seed);
        const auto [p, h] = partition_hier(g, 4, 0.10, seed, 30);
        const Vertex s = 0, t = g.vertex_count() - 1;
        const auto views = build_views(g, p, h, s, t, 30);

        std::size_t cut_vertices = 0;
        for (Vertex x = 0; x < g.vertex_count(); ++x) {
            bool has_cut = false;
            for (const Edge& e : g.neighbors(x)) has_cut |= p.block_of[x] != p.block_of[e.to];
            cut_vertices += has_cut;
        }
        std::size_t leaf_aux = 0;
        for (std::uint32_t b = 0; b < h.leaf_count; ++b) leaf_aux += views[b].aux.size();
        REQUIRE(leaf_aux == cut_vertices + 2);
    }
}

TEST_CASE("root exposes exactly the two terminals at every split", "[views]") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_connected_graph(24, 0.12, seed);
        const auto [p, h] = partition_hier(g, 4, 0.10, seed, 30);
        const auto views = build_views(g, p, h, 2, 17, 30);
        const BlockView& root = views[h.root];
        REQUIRE(root.aux.size() == 2);
        REQUIRE(root.aux[0].kind == AuxKind::terminal);
        REQUIRE(root.aux[1].kind == AuxKind::terminal);
        // ports mirror the children's boundaries, in child order
        std::size_t ports = 0;
        for (std::uint32_t c : root.children) ports += views[c].aux.size();
        REQUIRE(root.inner.size() == ports);
    }
}

TEST_CASE("boundary caps are enforced when views are built", "[views]") {
    const Graph g = grid_graph(4, 4);
    const Partition p{{0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}, 2, 1.0, 16};
    try {
        build_views(g, p, flat_hierarchy(2), 0, 15, 2); // every vertex is a cut vertex
        FAIL("expected boundary_too_large");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::boundary_too_large);
    }
}
