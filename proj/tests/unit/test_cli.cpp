#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netgames/io.hpp"
#include "netgames_cli/cli.hpp"

namespace netgames {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "netgames");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("netgames_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  nlohmann::json load(const std::string& name) const {
    return nlohmann::json::parse(io::read_text_file(dir_ / name));
  }

  fs::path dir_;
};

TEST_F(Cli, HelpAndVersionSucceed) {
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"--version"}).code, cli::kExitOk);
  const auto sub = run_cli({"simulate", "--help"});
  EXPECT_EQ(sub.code, cli::kExitOk);
  EXPECT_NE(sub.out.find("--graph"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen-network", "--type", "vr", "--out", path("x")}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen-network", "--out", path("x")}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen-network", "--type", "er", "--n", "25", "--avg-degree", "40", "--out",
                     path("x")})
                .code,
            cli::kExitUsage);
}

TEST_F(Cli, RuntimeErrorsExitOne) {
  const auto r = run_cli({"simulate", "--graph", path("missing.json"), "--game", "g2", "--out",
                          path("sim")});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, GeneratesReferenceTopologies) {
  ASSERT_EQ(run_cli({"gen-network", "--type", "reg", "--out", path("reg")}).code, 0);
  const Graph reg = io::graph_from_json(io::read_text_file(dir_ / "reg" / "graph.json"));
  EXPECT_DOUBLE_EQ(reg.average_degree(), 5.76);

  ASSERT_EQ(run_cli({"gen-network", "--type", "ba", "--seed", "9", "--out", path("ba")}).code, 0);
  const Graph ba = io::graph_from_json(io::read_text_file(dir_ / "ba" / "graph.json"));
  EXPECT_EQ(ba.edge_count(), 47U);

  const auto manifest = load("ba/manifest.json");
  EXPECT_EQ(manifest["command"], "gen-network");
  EXPECT_TRUE(manifest.contains("finished_utc"));
}

TEST_F(Cli, SimulateIsByteReproducible) {
  ASSERT_EQ(run_cli({"gen-network", "--type", "geo", "--out", path("g")}).code, 0);
  const std::string graph = path("g/graph.json");
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run_cli({"simulate", "--graph", graph, "--game", "g2", "--runs", "40", "--seed", "3",
                       "--out", path(out)})
                  .code,
              0);
  }
  EXPECT_EQ(io::read_text_file(dir_ / "a" / "results.json"),
            io::read_text_file(dir_ / "b" / "results.json"));
  EXPECT_EQ(io::read_text_file(dir_ / "a" / "durations.csv"),
            io::read_text_file(dir_ / "b" / "durations.csv"));
  ASSERT_EQ(run_cli({"simulate", "--graph", graph, "--game", "g2", "--runs", "40", "--seed", "3",
                     "--workers", "4", "--out", path("c")})
                .code,
            0);
  EXPECT_EQ(io::read_text_file(dir_ / "a" / "results.json"),
            io::read_text_file(dir_ / "c" / "results.json"));
}

TEST_F(Cli, ConfigFileFillsDefaultsAndFlagsWin) {
  ASSERT_EQ(run_cli({"gen-network", "--type", "reg", "--out", path("g")}).code, 0);
  io::write_text_file(dir_ / "run.cfg",
                      "# batch settings\nruns = 50\ngame=g5\nseed=4\nno-skip-absorbed=false\n");
  ASSERT_EQ(run_cli({"simulate", "--config", path("run.cfg"), "--graph", path("g/graph.json"),
                     "--runs", "30", "--out", path("sim")})
                .code,
            0);
  const auto results = load("sim/results.json");
  EXPECT_EQ(results["runs"], 30);
  EXPECT_EQ(results["config"]["game"], "G5");
  EXPECT_EQ(results["config"]["base_seed"], 4);
  EXPECT_EQ(results["config"]["skip_absorbed"], true);

  io::write_text_file(dir_ / "bad.cfg", "this line has no equals sign\n");
  EXPECT_EQ(run_cli({"simulate", "--config", path("bad.cfg"), "--graph", path("g/graph.json"),
                     "--game", "g2", "--out", path("sim2")})
                .code,
            cli::kExitUsage);
}

TEST_F(Cli, SweepThenAnalyze) {
  ASSERT_EQ(run_cli({"sweep", "--games", "g1,g2,g3", "--topologies", "reg,ba", "--runs", "20",
                     "--max-iters", "100000", "--out", path("sw")})
                .code,
            0);
  for (const char* f : {"sweep.json", "summary.csv", "cases.csv", "manifest.json",
                        "graphs/REG.json", "durations/G2_BA.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "sw" / f)) << f;
  }
  const auto a = run_cli({"analyze", "--in", path("sw"), "--features", "victories", "--out",
                          path("net")});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto net = load("net/network.json");
  EXPECT_EQ(net["labels"].size(), 6U);
  EXPECT_TRUE(fs::exists(dir_ / "net" / "network.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "net" / "features.csv"));
  EXPECT_EQ(run_cli({"analyze", "--in", path("nowhere")}).code, cli::kExitRuntime);
}

}  // namespace
}  // namespace netgames
