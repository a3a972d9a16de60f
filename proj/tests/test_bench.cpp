#include <catch2/catch_amalgamated.hpp>

#include "lpdp/bench.hpp"
#include "lpdp/svg.hpp"

using namespace lpdp;

namespace {

RunRecord rec(std::string instance, std::string solver, RunStatus status, double seconds,
              std::optional<Weight> weight = std::nullopt) {
    RunRecord r;
    r.instance = std::move(instance);
    r.solver = std::move(solver);
    r.status = status;
    r.seconds = seconds;
    r.weight = weight;
    r.seed = 1;
    r.config_hash = "0000000000000000";
    return r;
}

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string_view::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("CSV records round-trip exactly", "[bench]") {
    std::vector<RunRecord> records{
        rec("maze:6:0.3:7", "lpdp", RunStatus::solved, 0.03125, 17),
        rec("maze:6:0.3:7", "exhdfs", RunStatus::timeout, 60.0001),
        rec("graphs/a.txt", "lpdp", RunStatus::no_path, 1e-7),
        rec("x", "exhdfs", RunStatus::error, 0.1234567890123),
    };
    records[0].partition_seconds = 0.001953125;
    records[0].seed = 42;
    REQUIRE(parse_csv(emit_csv(records)) == records);
    REQUIRE(emit_csv(records).starts_with(csv_header));
}

TEST_CASE("damaged CSV is rejected", "[bench]") {
    REQUIRE_THROWS_AS(parse_csv("nonsense\n"), error);
    REQUIRE_THROWS_AS(parse_csv(std::string(csv_header) + "\na,b,Solved,1.0,5,0,1\n"), error);
    REQUIRE_THROWS_AS(parse_csv(std::string(csv_header) + "\na,b,Huh,1.0,5,0,1,h\n"), error);
}

TEST_CASE("cactus data keeps solved runs sorted ascending", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "s", RunStatus::solved, 3.0, 5),
        rec("i2", "s", RunStatus::solved, 1.0, 7),
        rec("i3", "s", RunStatus::timeout, 60.0),
    };
    const auto pts = cactus_data(records, "s");
    REQUIRE(pts == std::vector<std::pair<std::size_t, double>>{{1, 1.0}, {2, 3.0}});
    REQUIRE(cactus_data(records, "other").empty());
}

TEST_CASE("per-family solved counts add up across a combined record set", "[bench]") {
    std::vector<RunRecord> records;
    const auto add_family = [&records](const std::string& prefix, std::size_t solved, std::size_t missed) {
        for (std::size_t i = 0; i < solved; ++i)
            records.push_back(rec(prefix + std::to_string(i), "s", RunStatus::solved, 1.0 + i, 1));
        for (std::size_t i = 0; i < missed; ++i)
            records.push_back(rec(prefix + "miss" + std::to_string(i), "s", RunStatus::timeout, 60.0));
    };
    add_family("grid/", 288, 12);
    add_family("road/", 141, 9);
    add_family("word/", 55, 45);
    const auto pts = cactus_data(records, "s");
    REQUIRE(pts.size() == 288 + 141 + 55);
    REQUIRE(pts.size() == 484);
    for (std::size_t i = 1; i < pts.size(); ++i) REQUIRE(pts[i - 1].second <= pts[i].second);
}

TEST_CASE("repetitions aggregate to the lower median and demand full success", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "s", RunStatus::solved, 5.0, 9),
        rec("i1", "s", RunStatus::solved, 1.0, 9),
        rec("i1", "s", RunStatus::solved, 2.0, 9),
        rec("i2", "s", RunStatus::solved, 1.0, 3),
        rec("i2", "s", RunStatus::timeout, 60.0),
    };
    const auto pts = cactus_data(records, "s");
    REQUIRE(pts.size() == 1); // i2 timed out in one repetition
    REQUIRE(pts[0].second == 2.0);
}

TEST_CASE("speedup averages baseline-over-subject on common instances", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "base", RunStatus::solved, 2.0, 4),
        rec("i2", "base", RunStatus::solved, 8.0, 4),
        rec("i3", "base", RunStatus::timeout, 60.0),
        rec("i1", "subj", RunStatus::solved, 1.0, 4),
        rec("i2", "subj", RunStatus::solved, 2.0, 4),
        rec("i3", "subj", RunStatus::solved, 0.5, 4),
    };
    const SpeedupReport rep = speedup_report(records, "base", "subj");
    REQUIRE(rep.ratios.size() == 2); // i3 is not commonly solved
    REQUIRE(rep.ratios[0].second == Catch::Approx(2.0));
    REQUIRE(rep.ratios[1].second == Catch::Approx(4.0));
    REQUIRE(rep.mean == Catch::Approx(3.0));
    REQUIRE(rep.geometric_mean == Catch::Approx(std::sqrt(8.0)));
}

TEST_CASE("identical solvers have unit speedup", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "s", RunStatus::solved, 2.0, 4),
        rec("i2", "s", RunStatus::solved, 0.25, 1),
    };
    const SpeedupReport rep = speedup_report(records, "s", "s");
    for (const auto& [name, ratio] : rep.ratios) REQUIRE(ratio == Catch::Approx(1.0));
    REQUIRE(rep.mean == Catch::Approx(1.0));
}

TEST_CASE("disjoint solved sets cannot produce a speedup", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "base", RunStatus::solved, 2.0, 4),
        rec("i1", "subj", RunStatus::timeout, 60.0),
    };
    try {
        speedup_report(records, "base", "subj");
        FAIL("expected no_common_instances");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::no_common_instances);
    }
}

TEST_CASE("scatter pairs clamp timeouts onto the rails", "[bench]") {
    const std::vector<RunRecord> records{
        rec("i1", "A", RunStatus::solved, 1.0, 2),
        rec("i2", "A", RunStatus::timeout, 61.0),
        rec("i3", "A", RunStatus::no_path, 0.25),
        rec("i1", "B", RunStatus::solved, 2.0, 2),
        rec("i2", "B", RunStatus::solved, 5.0, 9),
        rec("i3", "B", RunStatus::no_path, 0.5),
    };
    const auto pts = scatter_data(records, "A", "B", 60.0);
    REQUIRE(pts.size() == 3); // one point per instance
    REQUIRE(pts[0] == ScatterPoint{"i1", 1.0, 2.0, false, false});
    REQUIRE(pts[1] == ScatterPoint{"i2", 60.0, 5.0, true, false});
    // NoPath is a completed run, not a timeout: it sits at its true runtime
    REQUIRE(pts[2] == ScatterPoint{"i3", 0.25, 0.5, false, false});
}

TEST_CASE("config hashes pin the knobs that matter", "[bench]") {
    LpdpConfig a, b;
    REQUIRE(config_hash(a, 60.0) == config_hash(b, 60.0));
    REQUIRE(config_hash(a, 60.0).size() == 16);
    b.k = 4;
    REQUIRE(config_hash(a, 60.0) != config_hash(b, 60.0));
    REQUIRE(config_hash(a, 60.0) != config_hash(a, 30.0));
}

TEST_CASE("suite runner cross-checks solvers on a tiny instance", "[bench]") {
    SuiteSpec spec;
    spec.instances = {"maze:4:0.2:5"};
    spec.solvers = {"lpdp", "exhdfs"};
    spec.time_limit = 30.0;
    spec.lpdp.k = 2;
    const auto records = run_suite(spec);
    REQUIRE(records.size() == 2);
    REQUIRE(records[0].solver == "lpdp");
    REQUIRE(records[1].solver == "exhdfs");
    REQUIRE(records[0].status == RunStatus::solved);
    REQUIRE(records[1].status == RunStatus::solved);
    REQUIRE(records[0].weight == records[1].weight);
    REQUIRE(records[0].config_hash == records[1].config_hash);
}

TEST_CASE("hopeless time limits classify as Timeout", "[bench]") {
    SuiteSpec spec;
    spec.instances = {"maze:30:0.0:1"};
    spec.solvers = {"exhdfs"};
    spec.time_limit = 0.001;
    const auto records = run_suite(spec);
    REQUIRE(records.size() == 1);
    REQUIRE(records[0].status == RunStatus::timeout);
}

TEST_CASE("empty suites are rejected", "[bench]") {
    REQUIRE_THROWS_AS(run_suite(SuiteSpec{}), error);
    SuiteSpec no_limit;
    no_limit.instances = {"maze:4:0.2:5"};
    no_limit.solvers = {"exhdfs"};
    no_limit.time_limit = 0.0;
    REQUIRE_THROWS_AS(run_suite(no_limit), error);
}

TEST_CASE("cactus SVG carries one marker per point and is reproducible", "[bench]") {
    const std::vector<CactusSeries> series{{"s", {{1, 0.5}, {2, 2.0}}}};
    const std::string svg = cactus_svg(series, 60.0);
    REQUIRE(count_occurrences(svg, "<circle class=\"pt\"") == 2);
    REQUIRE(svg == cactus_svg(series, 60.0));
    REQUIRE(svg.find("<svg") != std::string::npos);
}

TEST_CASE("scatter SVG flags exactly the railed points", "[bench]") {
    const std::vector<ScatterPoint> pts{
        {"i1", 1.0, 2.0, false, false},
        {"i2", 60.0, 5.0, true, false},
    };
    const std::string svg = scatter_svg(pts, "A", "B", 60.0);
    REQUIRE(count_occurrences(svg, "class=\"pt rail\"") == 1);
    REQUIRE(count_occurrences(svg, "class=\"pt\"") == 1);
    REQUIRE(svg == scatter_svg(pts, "A", "B", 60.0));
}

TEST_CASE("plots without data are refused", "[bench]") {
    try {
        cactus_svg({}, 60.0);
        FAIL("expected empty_series");
    } catch (const error& e) {
        REQUIRE(e.code() == errc::empty_series);
    }
    REQUIRE_THROWS_AS(scatter_svg({}, "A", "B", 60.0), error);
}
