// Command-line front end: instance generation, partitioning, solving, and the
// benchmark harness. Vertex ids are 1-based on this surface (METIS and
// solution-file convention); the library is 0-based.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpdp/bench.hpp"
#include "lpdp/bisection.hpp"
#include "lpdp/instance_gen.hpp"
#include "lpdp/maze.hpp"
#include "lpdp/metis_io.hpp"
#include "lpdp/oracle.hpp"
#include "lpdp/partition.hpp"
#include "lpdp/solver.hpp"
#include "lpdp/svg.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_no_path = 2;
constexpr int exit_timeout = 3;
constexpr int exit_usage = 4;

std::uint64_t env_seed() {
    if (const char* v = std::getenv("LPDP_SEED")) {
        try {
            return std::stoull(v);
        } catch (...) {
            throw lpdp::error(lpdp::errc::usage, "LPDP_SEED must be an unsigned integer");
        }
    }
    return 1;
}

void emit(const std::string& out_path, std::string_view content) {
    if (out_path.empty())
        std::cout << content;
    else
        lpdp::write_file(out_path, content);
}

struct InstanceArgs {
    std::string maze_path;
    std::string graph_path;
    std::uint64_t source = 0; // 1-based; 0 = unset
    std::uint64_t target = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--maze", maze_path, "maze text file ('S'/'T'/'.'/'#')");
        cmd->add_option("--graph", graph_path, "weighted graph in METIS format");
        cmd->add_option("--source", source, "source vertex id (1-based, with --graph)");
        cmd->add_option("--target", target, "target vertex id (1-based, with --graph)");
    }

    lpdp::Instance load() const {
        if (!maze_path.empty()) {
            if (!graph_path.empty()) throw lpdp::error(lpdp::errc::usage, "--maze and --graph are exclusive");
            return lpdp::maze_to_instance(lpdp::parse_maze(lpdp::read_file(maze_path)));
        }
        if (graph_path.empty()) throw lpdp::error(lpdp::errc::usage, "need --maze or --graph");
        if (source == 0 || target == 0)
            throw lpdp::error(lpdp::errc::usage, "--graph needs --source and --target (1-based)");
        lpdp::Graph g = lpdp::parse_metis(lpdp::read_file(graph_path));
        return lpdp::make_instance(std::move(g), static_cast<lpdp::Vertex>(source - 1),
                                   static_cast<lpdp::Vertex>(target - 1));
    }
};

lpdp::SuiteSpec parse_suite(const std::string& path) {
    const auto j = nlohmann::json::parse(lpdp::read_file(path));
    lpdp::SuiteSpec spec;
    for (const auto& v : j.at("instances")) spec.instances.push_back(v.get<std::string>());
    for (const auto& v : j.at("solvers")) spec.solvers.push_back(v.get<std::string>());
    spec.time_limit = j.value("time_limit", 60.0);
    spec.repetitions = j.value("repetitions", 1);
    spec.output = j.value("output", std::string{});
    if (j.contains("lpdp")) {
        const auto& c = j.at("lpdp");
        spec.lpdp.k = c.value("k", 0u);
        spec.lpdp.epsilon = c.value("epsilon", 0.10);
        spec.lpdp.boundary_cap = c.value("boundary_cap", 12);
        spec.lpdp.seed = c.value("seed", std::uint64_t{1});
        spec.lpdp.flat = c.value("flat", false);
        spec.lpdp.max_table_entries =
            c.value("max_table_entries", lpdp::BlockTable::default_max_entries);
    }
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"exact longest simple path toolkit"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "produce benchmark instances");
    generate->require_subcommand(1);

    auto* gen_maze = generate->add_subcommand("maze", "random grid maze, guaranteed solvable");
    std::uint64_t maze_n = 10, gen_seed = env_seed();
    double maze_fill = 0.3;
    std::string out_path;
    gen_maze->add_option("--n", maze_n, "grid side length")->required();
    gen_maze->add_option("--fill", maze_fill, "obstacle fraction in [0,1)");
    auto* maze_seed_opt = gen_maze->add_option("--seed", gen_seed, "generator seed");
    gen_maze->add_option("--out", out_path, "output file (default stdout)");
    gen_maze->callback([&] {
        (void)maze_seed_opt;
        const auto grid = lpdp::generate_maze(maze_n, maze_fill, gen_seed);
        emit(out_path, lpdp::emit_maze(grid));
    });

    auto* gen_sub = generate->add_subcommand("subgraph", "BFS-extracted instance from a METIS graph");
    std::string sub_graph;
    std::uint64_t sub_size = 0, sub_seed = env_seed();
    std::string sub_out;
    gen_sub->add_option("--graph", sub_graph, "source graph (METIS)")->required();
    gen_sub->add_option("--size", sub_size, "vertex count of the extract")->required();
    gen_sub->add_option("--seed", sub_seed, "generator seed");
    gen_sub->add_option("--out", sub_out, "output METIS file")->required();
    gen_sub->callback([&] {
        const lpdp::Graph g = lpdp::parse_metis(lpdp::read_file(sub_graph));
        const lpdp::Instance inst = lpdp::extract_bfs_subgraph(g, sub_size, sub_seed);
        lpdp::write_file(sub_out, lpdp::emit_metis(inst.graph));
        std::cout << (inst.source + 1) << ' ' << (inst.target + 1) << '\n';
    });

    // partition
    auto* part_cmd = app.add_subcommand("partition", "balanced k-way partition of a METIS graph");
    std::string part_graph, part_out;
    std::uint32_t part_k = 2;
    double part_eps = 0.10;
    std::uint64_t part_seed = env_seed();
    part_cmd->add_option("--graph", part_graph, "graph (METIS)")->required();
    part_cmd->add_option("--k", part_k, "block count (power of two)")->required();
    part_cmd->add_option("--imbalance", part_eps, "allowed imbalance epsilon");
    part_cmd->add_option("--seed", part_seed, "partitioner seed");
    part_cmd->add_option("--out", part_out, "output partition file (default stdout)");
    part_cmd->callback([&] {
        const lpdp::Graph g = lpdp::parse_metis(lpdp::read_file(part_graph));
        const auto [p, h] = lpdp::partition_hier(g, part_k, part_eps, part_seed);
        emit(part_out, lpdp::emit_partition(p));
    });

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "exact longest simple path between two terminals");
    InstanceArgs solve_inst;
    solve_inst.attach(solve_cmd);
    std::string solver_name = "lpdp", partition_file, solve_out;
    lpdp::LpdpConfig solve_cfg;
    solve_cfg.seed = env_seed();
    double solve_limit = 0.0;
    solve_cmd->add_option("--solver", solver_name, "lpdp or exhdfs")
        ->check(CLI::IsMember({"lpdp", "exhdfs"}));
    solve_cmd->add_option("--k", solve_cfg.k, "block count (0 = auto)");
    solve_cmd->add_option("--imbalance", solve_cfg.epsilon, "partition imbalance epsilon");
    solve_cmd->add_option("--boundary-cap", solve_cfg.boundary_cap, "max boundary vertices per block");
    solve_cmd->add_option("--partition-file", partition_file, "use an externally computed partition");
    solve_cmd->add_option("--seed", solve_cfg.seed, "partitioner seed");
    solve_cmd->add_option("--time-limit", solve_limit, "seconds before Timeout (0 = none)");
    solve_cmd->add_flag("--flat", solve_cfg.flat, "single combination level over all blocks");
    solve_cmd->add_option("--out", solve_out, "write the solution here too");
    solve_cmd->callback([&] {
        const lpdp::Instance inst = solve_inst.load();
        lpdp::Solution sol;
        if (solver_name == "exhdfs") {
            sol = lpdp::exhaustive_dfs(inst, solve_limit > 0 ? lpdp::Deadline::after(solve_limit)
                                                             : lpdp::Deadline::none());
        } else {
            lpdp::Partition preset;
            solve_cfg.time_limit = solve_limit;
            if (!partition_file.empty()) {
                preset = lpdp::load_partition(lpdp::read_file(partition_file), inst.graph,
                                              solve_cfg.epsilon);
                solve_cfg.partition = &preset;
            }
            sol = lpdp::lpdp_solve(inst, solve_cfg);
        }
        const std::string text = lpdp::format_solution(sol);
        std::cout << text;
        if (!solve_out.empty()) lpdp::write_file(solve_out, text);
        if (sol.status == lpdp::SolveStatus::no_path) std::exit(exit_no_path);
        if (sol.status == lpdp::SolveStatus::timeout) std::exit(exit_timeout);
    });

    // bench
    auto* bench = app.add_subcommand("bench", "suite runner and report generation");
    bench->require_subcommand(1);

    auto* bench_run = bench->add_subcommand("run", "run a JSON suite and persist CSV records");
    std::string suite_path, bench_out;
    bench_run->add_option("--suite", suite_path, "suite spec (JSON)")->required();
    bench_run->add_option("--out", bench_out, "CSV output (overrides the spec's `output`)");
    bench_run->callback([&] {
        lpdp::SuiteSpec spec = parse_suite(suite_path);
        if (!bench_out.empty()) spec.output = bench_out;
        const auto records = lpdp::run_suite(spec);
        const std::string csv = lpdp::emit_csv(records);
        emit(spec.output, csv);
        if (!spec.output.empty()) {
            std::size_t solved = 0;
            for (const auto& r : records) solved += r.status == lpdp::RunStatus::solved;
            std::cout << records.size() << " runs, " << solved << " solved -> " << spec.output << '\n';
        }
    });

    std::string csv_path;
    auto* bench_cactus = bench->add_subcommand("cactus", "sorted solved runtimes for one solver");
    std::string cactus_solver;
    bench_cactus->add_option("--csv", csv_path, "records CSV")->required();
    bench_cactus->add_option("--solver", cactus_solver, "solver name")->required();
    bench_cactus->callback([&] {
        const auto data = lpdp::cactus_data(lpdp::parse_csv(lpdp::read_file(csv_path)), cactus_solver);
        for (const auto& [rank, sec] : data)
            std::cout << rank << ' ' << lpdp::detail::format_double(sec) << '\n';
    });

    auto* bench_scatter = bench->add_subcommand("scatter", "per-instance runtime pairs");
    std::string scatter_a, scatter_b;
    double scatter_limit = 60.0;
    bench_scatter->add_option("--csv", csv_path, "records CSV")->required();
    bench_scatter->add_option("--a", scatter_a, "first solver")->required();
    bench_scatter->add_option("--b", scatter_b, "second solver")->required();
    bench_scatter->add_option("--limit", scatter_limit, "time limit for the rails");
    bench_scatter->callback([&] {
        const auto pts = lpdp::scatter_data(lpdp::parse_csv(lpdp::read_file(csv_path)), scatter_a,
                                            scatter_b, scatter_limit);
        for (const auto& p : pts)
            std::cout << p.instance << ' ' << lpdp::detail::format_double(p.a) << ' '
                      << lpdp::detail::format_double(p.b) << (p.a_timeout ? " a-timeout" : "")
                      << (p.b_timeout ? " b-timeout" : "") << '\n';
    });

    auto* bench_speedup = bench->add_subcommand("speedup", "baseline/subject runtime ratios");
    std::string speed_base, speed_subj;
    bench_speedup->add_option("--csv", csv_path, "records CSV")->required();
    bench_speedup->add_option("--baseline", speed_base, "baseline solver")->required();
    bench_speedup->add_option("--subject", speed_subj, "subject solver")->required();
    bench_speedup->callback([&] {
        const auto rep =
            lpdp::speedup_report(lpdp::parse_csv(lpdp::read_file(csv_path)), speed_base, speed_subj);
        for (const auto& [name, ratio] : rep.ratios)
            std::cout << name << ' ' << lpdp::detail::format_double(ratio) << '\n';
        std::cout << "mean " << lpdp::detail::format_double(rep.mean) << '\n';
        std::cout << "geometric-mean " << lpdp::detail::format_double(rep.geometric_mean) << '\n';
    });

    auto* bench_plot = bench->add_subcommand("plot", "render cactus or scatter SVG from CSV");
    std::string plot_kind = "cactus", plot_out;
    std::vector<std::string> plot_solvers;
    std::string plot_a, plot_b;
    double plot_limit = 60.0;
    bench_plot->add_option("--csv", csv_path, "records CSV")->required();
    bench_plot->add_option("--kind", plot_kind, "cactus or scatter")
        ->check(CLI::IsMember({"cactus", "scatter"}));
    bench_plot->add_option("--solver", plot_solvers, "cactus: solvers to draw (default: all)");
    bench_plot->add_option("--a", plot_a, "scatter: first solver");
    bench_plot->add_option("--b", plot_b, "scatter: second solver");
    bench_plot->add_option("--limit", plot_limit, "time limit shown on the plot");
    bench_plot->add_option("--out", plot_out, "SVG output file")->required();
    bench_plot->callback([&] {
        const auto records = lpdp::parse_csv(lpdp::read_file(csv_path));
        std::string svg;
        if (plot_kind == "cactus") {
            std::vector<std::string> names = plot_solvers;
            if (names.empty()) {
                for (const auto& r : records)
                    if (std::find(names.begin(), names.end(), r.solver) == names.end())
                        names.push_back(r.solver);
                std::sort(names.begin(), names.end());
            }
            std::vector<lpdp::CactusSeries> series;
            for (const auto& name : names) series.push_back({name, lpdp::cactus_data(records, name)});
            svg = lpdp::cactus_svg(series, plot_limit);
        } else {
            if (plot_a.empty() || plot_b.empty())
                throw lpdp::error(lpdp::errc::usage, "scatter needs --a and --b");
            svg = lpdp::scatter_svg(lpdp::scatter_data(records, plot_a, plot_b, plot_limit), plot_a,
                                    plot_b, plot_limit);
        }
        lpdp::write_file(plot_out, svg);
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check a solution file against its instance");
    InstanceArgs verify_inst;
    verify_inst.attach(verify_cmd);
    std::string sol_path;
    verify_cmd->add_option("--solution", sol_path, "solution file (3-line format)")->required();
    verify_cmd->callback([&] {
        const lpdp::Instance inst = verify_inst.load();
        const lpdp::Solution sol = lpdp::parse_solution(lpdp::read_file(sol_path));
        if (sol.status != lpdp::SolveStatus::solved) {
            std::cout << "status " << lpdp::status_name(sol.status) << ": nothing to verify\n";
            return;
        }
        const lpdp::Verdict v = lpdp::validate_path(inst.graph, sol.path, inst.source, inst.target);
        if (!v.valid) {
            std::cout << "invalid path\n";
            std::exit(1);
        }
        if (v.weight != sol.weight) {
            std::cout << "weight mismatch: path weighs " << v.weight << ", file claims " << sol.weight
                      << '\n';
            std::exit(1);
        }
        std::cout << "valid weight " << v.weight << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lpdp::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
