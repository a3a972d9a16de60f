#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lpdp/graph.hpp"
#include "lpdp/maze.hpp"
#include "lpdp/oracle.hpp"
#include "lpdp/solution.hpp"
#include "lpdp/solver.hpp"

namespace lpdp {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::usage, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::usage, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(errc::usage, "short write to '" + path + "'");
}

enum class RunStatus { solved, no_path, timeout, error };

inline const char* run_status_name(RunStatus s) {
    switch (s) {
    case RunStatus::solved: return "Solved";
    case RunStatus::no_path: return "NoPath";
    case RunStatus::timeout: return "Timeout";
    case RunStatus::error: return "Error";
    }
    return "Error";
}

struct RunRecord {
    std::string instance;
    std::string solver;
    RunStatus status = RunStatus::error;
    double seconds = 0.0;
    std::optional<Weight> weight; // iff Solved
    double partition_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string config_hash;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SuiteSpec {
    std::vector<std::string> instances; // "maze:<side>:<fill>:<seed>" or maze file paths
    std::vector<std::string> solvers;   // "lpdp" or "exhdfs"
    double time_limit = 60.0;
    int repetitions = 1;
    std::string output; // CSV path; empty = caller handles persistence
    LpdpConfig lpdp;
};

// FNV-1a over the knobs that could change a result; pins records to the
// configuration that produced them.
inline std::string config_hash(const LpdpConfig& cfg, double time_limit) {
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            h ^= (value >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(cfg.k);
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof cfg.epsilon);
    std::memcpy(&bits, &cfg.epsilon, 8);
    mix(bits);
    mix(static_cast<std::uint64_t>(cfg.boundary_cap));
    mix(cfg.seed);
    std::memcpy(&bits, &time_limit, 8);
    mix(bits);
    mix(static_cast<std::uint64_t>(cfg.flat) | (static_cast<std::uint64_t>(cfg.rule_end_above_root) << 1) |
        (static_cast<std::uint64_t>(cfg.rule_roots_increasing) << 2) |
        (static_cast<std::uint64_t>(cfg.prune_dominated) << 3));
    mix(cfg.max_table_entries);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = "0123456789abcdef"[h & 0xf];
        h >>= 4;
    }
    return out;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) fail(errc::usage, "unformattable double");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(errc::usage, "bad number '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

} // namespace detail

inline constexpr std::string_view csv_header =
    "instance,solver,status,seconds,weight,partition_seconds,seed,config_hash";

inline std::string emit_csv(const std::vector<RunRecord>& records) {
    std::string out(csv_header);
    out += '\n';
    for (const RunRecord& r : records) {
        out += r.instance;
        out += ',';
        out += r.solver;
        out += ',';
        out += run_status_name(r.status);
        out += ',';
        out += detail::format_double(r.seconds);
        out += ',';
        if (r.weight) out += std::to_string(*r.weight);
        out += ',';
        out += detail::format_double(r.partition_seconds);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += r.config_hash;
        out += '\n';
    }
    return out;
}

inline std::vector<RunRecord> parse_csv(std::string_view text) {
    std::vector<RunRecord> out;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        if (first) {
            if (line != csv_header) fail(errc::usage, "unexpected CSV header");
            first = false;
            continue;
        }
        const auto f = detail::split_csv_line(line);
        if (f.size() != 8) fail(errc::usage, "CSV row needs 8 fields");
        RunRecord r;
        r.instance = std::string(f[0]);
        r.solver = std::string(f[1]);
        if (f[2] == "Solved") r.status = RunStatus::solved;
        else if (f[2] == "NoPath") r.status = RunStatus::no_path;
        else if (f[2] == "Timeout") r.status = RunStatus::timeout;
        else if (f[2] == "Error") r.status = RunStatus::error;
        else fail(errc::usage, "bad status '" + std::string(f[2]) + "'");
        r.seconds = detail::parse_double(f[3]);
        if (!f[4].empty()) {
            Weight w = 0;
            const auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), w);
            if (ec != std::errc() || ptr != f[4].data() + f[4].size()) fail(errc::usage, "bad weight");
            r.weight = w;
        }
        r.partition_seconds = detail::parse_double(f[5]);
        {
            const auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), r.seed);
            if (ec != std::errc() || ptr != f[6].data() + f[6].size()) fail(errc::usage, "bad seed");
        }
        r.config_hash = std::string(f[7]);
        out.push_back(std::move(r));
    }
    if (first) fail(errc::usage, "empty CSV");
    return out;
}

// "maze:<side>:<fill>:<seed>" -> generated instance; anything else is read
// as a maze text file.
inline Instance load_bench_instance(const std::string& spec) {
    if (spec.starts_with("maze:")) {
        std::size_t a = spec.find(':', 5);
        std::size_t b = a == std::string::npos ? a : spec.find(':', a + 1);
        if (a == std::string::npos || b == std::string::npos) fail(errc::usage, "maze spec needs side:fill:seed");
        const auto side = static_cast<std::size_t>(std::stoul(spec.substr(5, a - 5)));
        const double fill = detail::parse_double(std::string_view(spec).substr(a + 1, b - a - 1));
        const auto seed = static_cast<std::uint64_t>(std::stoull(spec.substr(b + 1)));
        return maze_to_instance(generate_maze(side, fill, seed));
    }
    return maze_to_instance(parse_maze(read_file(spec)));
}

inline std::vector<RunRecord> run_suite(const SuiteSpec& spec) {
    if (spec.instances.empty() || spec.solvers.empty()) fail(errc::usage, "suite needs instances and solvers");
    if (!(spec.time_limit > 0)) fail(errc::usage, "suite needs a positive time limit");
    std::vector<RunRecord> out;
    const std::string hash = config_hash(spec.lpdp, spec.time_limit);
    for (const std::string& inst_spec : spec.instances)
        for (const std::string& solver : spec.solvers)
            for (int rep = 0; rep < std::max(1, spec.repetitions); ++rep) {
                RunRecord r;
                r.instance = inst_spec;
                r.solver = solver;
                r.seed = spec.lpdp.seed;
                r.config_hash = hash;
                try {
                    const Instance inst = load_bench_instance(inst_spec);
                    Solution sol;
                    if (solver == "exhdfs") {
                        sol = exhaustive_dfs(inst, Deadline::after(spec.time_limit));
                    } else if (solver == "lpdp") {
                        LpdpConfig cfg = spec.lpdp;
                        cfg.time_limit = spec.time_limit;
                        sol = lpdp_solve(inst, cfg);
                    } else {
                        fail(errc::usage, "unknown solver '" + solver + "'");
                    }
                    r.seconds = sol.seconds;
                    r.partition_seconds = sol.partition_seconds;
                    switch (sol.status) {
                    case SolveStatus::solved: {
                        const Verdict v = validate_path(inst.graph, sol.path, inst.source, inst.target);
                        if (!v.valid || v.weight != sol.weight) {
                            r.status = RunStatus::error;
                        } else {
                            r.status = RunStatus::solved;
                            r.weight = sol.weight;
                        }
                        break;
                    }
                    case SolveStatus::no_path: r.status = RunStatus::no_path; break;
                    case SolveStatus::timeout: r.status = RunStatus::timeout; break;
                    }
                } catch (const std::exception&) {
                    r.status = RunStatus::error;
                }
                out.push_back(std::move(r));
            }
    return out;
}

namespace detail {

// repetition collapse: solved iff every rep solved; seconds = lower median
struct Aggregate {
    bool solved = false;
    bool timed_out = false; // any rep hit the limit (or errored)
    double seconds = 0.0;
    Weight weight = 0;
};

inline std::vector<std::pair<std::string, Aggregate>> aggregate_by_instance(
    const std::vector<RunRecord>& records, std::string_view solver) {
    std::vector<std::pair<std::string, std::vector<const RunRecord*>>> grouped;
    for (const RunRecord& r : records) {
        if (r.solver != solver) continue;
        auto it = std::find_if(grouped.begin(), grouped.end(),
                               [&](const auto& g) { return g.first == r.instance; });
        if (it == grouped.end()) {
            grouped.push_back({r.instance, {&r}});
        } else {
            it->second.push_back(&r);
        }
    }
    std::vector<std::pair<std::string, Aggregate>> out;
    for (auto& [name, reps] : grouped) {
        Aggregate agg;
        agg.solved = std::all_of(reps.begin(), reps.end(),
                                 [](const RunRecord* r) { return r->status == RunStatus::solved; });
        agg.timed_out = std::any_of(reps.begin(), reps.end(), [](const RunRecord* r) {
            return r->status == RunStatus::timeout || r->status == RunStatus::error;
        });
        std::vector<double> secs;
        secs.reserve(reps.size());
        for (const RunRecord* r : reps) secs.push_back(r->seconds);
        std::sort(secs.begin(), secs.end());
        agg.seconds = secs[(secs.size() - 1) / 2];
        if (agg.solved) agg.weight = *reps.front()->weight;
        out.push_back({name, agg});
    }
    return out;
}

} // namespace detail

// Solved runtimes sorted ascending: (1-based rank, seconds). Unsolved runs
// are dropped.
inline std::vector<std::pair<std::size_t, double>> cactus_data(const std::vector<RunRecord>& records,
                                                               std::string_view solver) {
    std::vector<double> secs;
    for (const auto& [name, agg] : detail::aggregate_by_instance(records, solver))
        if (agg.solved) secs.push_back(agg.seconds);
    std::sort(secs.begin(), secs.end());
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(secs.size());
    for (std::size_t i = 0; i < secs.size(); ++i) out.push_back({i + 1, secs[i]});
    return out;
}

struct SpeedupReport {
    std::vector<std::pair<std::string, double>> ratios; // per common instance
    double mean = 0.0;           // arithmetic, the headline number
    double geometric_mean = 0.0; // reported alongside, labeled
};

// ratio = baseline seconds / subject seconds over instances both solved
inline SpeedupReport speedup_report(const std::vector<RunRecord>& records, std::string_view baseline,
                                    std::string_view subject) {
    const auto base = detail::aggregate_by_instance(records, baseline);
    const auto subj = detail::aggregate_by_instance(records, subject);
    SpeedupReport rep;
    double sum = 0.0, logsum = 0.0;
    for (const auto& [name, b] : base) {
        if (!b.solved) continue;
        const auto it = std::find_if(subj.begin(), subj.end(),
                                     [&](const auto& s) { return s.first == name; });
        if (it == subj.end() || !it->second.solved) continue;
        const double ratio = b.seconds / std::max(it->second.seconds, 1e-9);
        rep.ratios.push_back({name, ratio});
        sum += ratio;
        logsum += std::log(ratio);
    }
    if (rep.ratios.empty()) fail(errc::no_common_instances, "no instance solved by both solvers");
    rep.mean = sum / static_cast<double>(rep.ratios.size());
    rep.geometric_mean = std::exp(logsum / static_cast<double>(rep.ratios.size()));
    return rep;
}

struct ScatterPoint {
    std::string instance;
    double a = 0.0;
    double b = 0.0;
    bool a_timeout = false;
    bool b_timeout = false;

    friend bool operator==(const ScatterPoint&, const ScatterPoint&) = default;
};

// (t_A, t_B) per instance; timeouts clamp to the limit and flag a rail.
inline std::vector<ScatterPoint> scatter_data(const std::vector<RunRecord>& records,
                                              std::string_view solver_a, std::string_view solver_b,
                                              double time_limit) {
    const auto a = detail::aggregate_by_instance(records, solver_a);
    const auto b = detail::aggregate_by_instance(records, solver_b);
    std::vector<ScatterPoint> out;
    for (const auto& [name, ra] : a) {
        const auto it = std::find_if(b.begin(), b.end(), [&](const auto& s) { return s.first == name; });
        if (it == b.end()) fail(errc::usage, "instance '" + name + "' missing for second solver");
        ScatterPoint pt;
        pt.instance = name;
        pt.a_timeout = ra.timed_out;
        pt.b_timeout = it->second.timed_out;
        pt.a = pt.a_timeout ? time_limit : ra.seconds;
        pt.b = pt.b_timeout ? time_limit : it->second.seconds;
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace lpdp
