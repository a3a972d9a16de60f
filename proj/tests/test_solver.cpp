#include <catch2/catch_amalgamated.hpp>

#include "lpdp/instance_gen.hpp"
#include "lpdp/maze.hpp"
#include "lpdp/oracle.hpp"
#include "lpdp/solver.hpp"
#include "support.hpp"

using namespace lpdp;
using namespace testsupport;

namespace {

LpdpConfig with_k(std::uint32_t k) {
    LpdpConfig cfg;
    cfg.k = k;
    return cfg;
}

void require_matches_oracle(const Instance& inst, const LpdpConfig& cfg) {
    const Solution got = lpdp_solve(inst, cfg);
    const Solution want = exhaustive_dfs(inst);
    REQUIRE(got.status == want.status);
    if (want.status != SolveStatus::solved) return;
    REQUIRE(got.weight == want.weight);
    const Verdict v = validate_path(inst.graph, got.path, inst.source, inst.target);
    REQUIRE(v.valid);
    REQUIRE(v.weight == got.weight);
}

} // namespace

TEST_CASE("split unit path is solved and reconstructed", "[solver]") {
    const Instance inst = make_instance(unit_path(4), 0, 3);
    const Solution sol = lpdp_solve(inst, with_k(2));
    REQUIRE(sol.status == SolveStatus::solved);
    REQUIRE(sol.weight == 3);
    REQUIRE(sol.path == Path{0, 1, 2, 3});
    REQUIRE(sol.seconds >= sol.partition_seconds);
}

TEST_CASE("single block degenerates to whole-graph preprocessing", "[solver]") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        require_matches_oracle(make_instance(random_connected_graph(10, 0.3, seed), 0, 9), with_k(1));
}

TEST_CASE("solver agrees with the oracle across block counts", "[solver]") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Instance maze = maze_to_instance(generate_maze(6, 0.3, seed));
        const Instance rnd = make_instance(random_graph(12, 0.3, seed * 7), 0, 11);
        for (std::uint32_t k : {1u, 2u, 4u}) {
            require_matches_oracle(maze, with_k(k));
            require_matches_oracle(rnd, with_k(k));
        }
    }
}

TEST_CASE("optimum is invariant to partition seed, hierarchy shape, and direction", "[solver]") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = maze_to_instance(generate_maze(6, 0.4, seed + 40));
        const Weight want = exhaustive_dfs(inst).weight;
        for (std::uint64_t pseed = 1; pseed <= 5; ++pseed) {
            LpdpConfig cfg = with_k(4);
            cfg.seed = pseed;
            REQUIRE(lpdp_solve(inst, cfg).weight == want);
        }
        LpdpConfig flat = with_k(4);
        flat.flat = true;
        REQUIRE(lpdp_solve(inst, flat).weight == want);

        const Instance rev = make_instance(inst.graph, inst.target, inst.source);
        const Solution back = lpdp_solve(rev, with_k(2));
        REQUIRE(back.weight == want);
        REQUIRE(back.path.front() == inst.target);
        REQUIRE(back.path.back() == inst.source);
    }
}

TEST_CASE("externally supplied partitions drive the block structure", "[solver]") {
    const Instance inst = make_instance(path_graph({2, 1, 4, 1, 2}), 0, 5);
    Partition p{{0, 0, 0, 1, 1, 1}, 2, 0.0, 3};
    LpdpConfig cfg;
    cfg.partition = &p;
    const Solution sol = lpdp_solve(inst, cfg);
    REQUIRE(sol.status == SolveStatus::solved);
    REQUIRE(sol.weight == 10);
    REQUIRE(sol.path == Path{0, 1, 2, 3, 4, 5});
}

TEST_CASE("terminal-free components do not disturb the solve", "[solver]") {
    // second block holds a separate component with no boundary at all
    const Graph g = Graph::from_edges(4, {{0, 1, 1}, {2, 3, 9}});
    const Instance inst = make_instance(g, 0, 1);
    Partition p{{0, 0, 1, 1}, 2, 0.0, 2};
    LpdpConfig cfg;
    cfg.partition = &p;
    const Solution sol = lpdp_solve(inst, cfg);
    REQUIRE(sol.status == SolveStatus::solved);
    REQUIRE(sol.weight == 1);
    REQUIRE(sol.path == Path{0, 1});
}

TEST_CASE("unreachable terminals report NoPath", "[solver]") {
    const Graph g = Graph::from_edges(6, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}});
    for (std::uint32_t k : {1u, 2u}) {
        const Solution sol = lpdp_solve(make_instance(g, 0, 5), with_k(k));
        REQUIRE(sol.status == SolveStatus::no_path);
        REQUIRE(sol.weight == 0);
        REQUIRE(sol.path.empty());
    }
}

TEST_CASE("expired deadlines surface as a clean Timeout", "[solver]") {
    const Instance inst = make_instance(random_connected_graph(20, 0.5, 3), 0, 19);
    LpdpConfig cfg = with_k(1);
    cfg.time_limit = 1e-6;
    const Solution sol = lpdp_solve(inst, cfg);
    REQUIRE(sol.status == SolveStatus::timeout);
    REQUIRE(sol.path.empty());
}

TEST_CASE("automatic block count targets modest leaf sizes", "[solver]") {
    REQUIRE(auto_block_count(10) == 2);
    REQUIRE(auto_block_count(128) == 2);
    REQUIRE(auto_block_count(129) == 4);
    REQUIRE(auto_block_count(600) == 16);
    const Instance inst = maze_to_instance(generate_maze(7, 0.3, 11));
    require_matches_oracle(inst, LpdpConfig{}); // k = 0 -> auto
}
