#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sbscache/cli.hpp"
#include "sbscache/config.hpp"

using namespace sbscache;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sbscache_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

struct Result {
    int status;
    std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

const char* kSmall =
    "# small scenario\n"
    "n_sbs = 10\n"
    "n_users = 100\n"
    "n_rounds = 2\n"
    "replications = 3\n";

}  // namespace

TEST(Config, ParsesCommentsAndDefaults) {
    const auto c = parse_config("  n_sbs = 48   # middle of the sweep\nalpha=0.6\n\npolicy = baseline\n");
    EXPECT_EQ(c.n_sbs, 48u);
    EXPECT_EQ(c.alpha, 0.6);
    EXPECT_EQ(c.policy, Policy::baseline);
    EXPECT_EQ(c.cell_radius, 350.0);
    EXPECT_EQ(c.memory, 50u);
}

TEST(Config, MissingNsbsNamed) {
    try {
        parse_config("alpha = 0.6\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("n_sbs"), std::string::npos);
    }
}

TEST(Config, ErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("n_sbs = 4\nbogus = 1\n").find("line 2: unknown key `bogus`"), std::string::npos);
    EXPECT_NE(message("n_sbs = four\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("n_sbs = 4\nn_sbs = 5\n").find("duplicate"), std::string::npos);
    EXPECT_NE(message("n_sbs = 4\nmemory 3\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("n_sbs = 4\nmemory = 2000\n").find("memory"), std::string::npos);
    EXPECT_NE(message("n_sbs = 4\npolicy = lru\n").find("policy"), std::string::npos);
    EXPECT_NE(message("n_sbs = -3\n").find("line 1"), std::string::npos);
}

TEST(Config, OverridesWin) {
    const auto c = parse_config("n_sbs = 4\nalpha = 0.6\n", {{"alpha", "1.1"}});
    EXPECT_EQ(c.alpha, 1.1);
}

TEST(Config, RoundTrip) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        ScenarioConfig c;
        c.n_sbs = rng() % 100;
        c.cell_radius = 1.0 + 1000.0 * uniform01(rng);
        c.alpha = 2.0 * uniform01(rng);
        c.sbs_range_min = trial % 2 ? 50.0 * uniform01(rng) + 1.0 : 0.0;
        c.sbs_range_max = trial % 2 ? 60.0 + 50.0 * uniform01(rng) : 0.0;
        c.memory = 1 + rng() % 1000;
        c.master_seed = rng();
        c.policy = static_cast<Policy>(trial % 3);
        c.threshold_mode = trial % 2 ? ThresholdMode::universal : ThresholdMode::individual;
        c.coloring_mode = trial % 3 ? ColoringMode::greedy : ColoringMode::exact;
        c.survivor_counting = trial % 2 ? SurvivorCounting::once : SurvivorCounting::per_set;
        c.r_class = 1.0 + 200.0 * uniform01(rng);
        c.threshold_scale = uniform01(rng);
        EXPECT_EQ(parse_config(serialize_config(c)), c);
    }
}

TEST(Cli, RunSingleRow) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    const auto r = invoke({"run", cfg, "--policy", "baseline"});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream is(r.out);
    std::string header, row, extra;
    std::getline(is, header);
    std::getline(is, row);
    EXPECT_EQ(header, cli::kRunCsvHeader);
    EXPECT_EQ(row.rfind("baseline,", 0), 0u);
    EXPECT_FALSE(std::getline(is, extra));
}

TEST(Cli, RunDeterministicWithSeedOverride) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    const auto a = invoke({"run", cfg, "--master_seed", "7", "--policy", "matern_coloring"});
    const auto b = invoke({"run", cfg, "--master_seed", "7", "--policy", "matern_coloring", "--jobs", "3"});
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find(",7\n"), std::string::npos);
}

TEST(Cli, RunReportsMissingKey) {
    TempDir dir;
    const auto cfg = dir.write("bad.conf", "alpha = 0.6\n");
    const auto r = invoke({"run", cfg});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("n_sbs"), std::string::npos);
}

TEST(Cli, RunMissingFile) {
    const auto r = invoke({"run", "/nonexistent/x.conf"});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST(Cli, SweepSingleCell) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    const auto r = invoke({"sweep", cfg, "--axis", "alpha", "--values", "0.6", "--policies", "baseline"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.rfind(std::string(kSweepCsvHeader) + "\nalpha,0.6,baseline,", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST(Cli, SweepWritesFileByteIdentical) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    const auto out1 = (dir.path / "one.csv").string();
    const auto out2 = (dir.path / "two.csv").string();
    const std::vector<std::string> base{"sweep", cfg, "--axis", "n_sbs", "--values", "4,8",
                                        "--policies", "baseline,threshold_universal,matern_coloring"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", out1});
    b.insert(b.end(), {"--out", out2, "--jobs", "2"});
    ASSERT_EQ(invoke(a).status, 0);
    ASSERT_EQ(invoke(b).status, 0);
    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    const std::string text = s1.str();
    EXPECT_EQ(text, s2.str());
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST(Cli, SweepRecipeFig4UsesFortyEightSbs) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    const auto r = invoke({"sweep", cfg, "--recipe", "fig4", "--replications", "1", "--n_rounds", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 6 * 3);
    EXPECT_NE(r.out.find("alpha,1.2,matern_coloring,"), std::string::npos);
}

TEST(Cli, SweepRejectsBadNames) {
    TempDir dir;
    const auto cfg = dir.write("a.conf", kSmall);
    EXPECT_NE(invoke({"sweep", cfg, "--axis", "memory", "--values", "1", "--policies", "baseline"}).status, 0);
    EXPECT_NE(invoke({"sweep", cfg, "--axis", "alpha", "--values", "1", "--policies", "lfu"}).status, 0);
    EXPECT_NE(invoke({"sweep", cfg, "--recipe", "fig9"}).status, 0);
}

TEST(Cli, InspectColoringOfOverlappingPair) {
    TempDir dir;
    const auto cfg = dir.write("pair.conf", "n_sbs = 2\ncell_radius = 20\npolicy = threshold_coloring\n");
    const auto r = invoke({"inspect", cfg, "--emit", "coloring"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.out == "vertex_id,color\n0,1\n1,2\n" || r.out == "vertex_id,color\n0,2\n1,1\n") << r.out;
}

TEST(Cli, InspectGraphMatchesDistances) {
    TempDir dir;
    const auto cfg = dir.write("g.conf", "n_sbs = 30\npolicy = threshold_coloring\nthreshold_mode = universal\n");
    const auto graph = invoke({"inspect", cfg, "--emit", "graph"});
    const auto points = invoke({"inspect", cfg, "--emit", "points"});
    ASSERT_EQ(graph.status, 0) << graph.err;
    ASSERT_EQ(points.status, 0) << points.err;

    std::istringstream ps(points.out);
    std::string line;
    std::getline(ps, line);
    std::vector<Point> pts;
    while (std::getline(ps, line)) {
        double x = 0, y = 0;
        std::size_t id = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%zu,%lf,%lf", &id, &x, &y), 3);
        pts.push_back({x, y});
    }
    ASSERT_EQ(pts.size(), 30u);
    std::string expected;
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = i + 1; j < 30; ++j)
            if (std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) <= 80.0)
                expected += std::to_string(i) + " " + std::to_string(j) + "\n";
    EXPECT_EQ(graph.out, expected);
}

TEST(Cli, InspectClassesAllWeightsPositive) {
    TempDir dir;
    const auto cfg = dir.write("m.conf", "n_sbs = 40\npolicy = matern_coloring\n");
    const auto r = invoke({"inspect", cfg, "--emit", "classes"});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "sbs_id,weight,class_members");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        long id = 0, weight = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%ld,%ld,", &id, &weight), 2);
        EXPECT_GE(weight, 1);
    }
    EXPECT_EQ(rows, 40);
}

TEST(Cli, InspectStageErrors) {
    TempDir dir;
    const auto cfg = dir.write("b.conf", "n_sbs = 5\npolicy = baseline\n");
    const auto r = invoke({"inspect", cfg, "--emit", "classes"});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("inspect classes"), std::string::npos);
    EXPECT_EQ(invoke({"inspect", cfg, "--emit", "placement"}).status, 0);
    EXPECT_NE(invoke({"inspect", cfg, "--emit", "nonsense"}).status, 0);
}

TEST(Cli, NoSubcommand) { EXPECT_NE(invoke({}).status, 0); }
