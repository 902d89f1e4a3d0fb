#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "trussopt/io/results_csv.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = TRUSSOPT_CLI;

int run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("trussopt_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("analyze --help"), 0);
}

TEST(Cli, SingleRunsAreByteIdentical) {
  const fs::path dir = scratch("single");
  const std::string common =
      "analyze --benchmark eight-member --runs 4 --seed 17 --generations 300 --quiet --out ";
  ASSERT_EQ(run(common + (dir / "a").string()), 0);
  ASSERT_EQ(run(common + (dir / "b").string()), 0);
  const std::string a = slurp(dir / "a" / "results.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b" / "results.csv"));
  EXPECT_EQ(slurp(dir / "a" / "profile.csv"), slurp(dir / "b" / "profile.csv"));
  std::ifstream in(dir / "a" / "results.csv");
  EXPECT_EQ(trussopt::io::read_results_csv(in).size(), 4u);
}

TEST(Cli, HypersphereWritesEffortAndSvg) {
  const fs::path dir = scratch("trace");
  ASSERT_EQ(run("analyze --benchmark two-bar-oracle --strategy hypersphere --d-max 30 --trials 2 "
                "--pop 20 --generations 1000 --svg --quiet --cluster 10 --out " + dir.string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "effort.csv"));
  EXPECT_TRUE(fs::exists(dir / "shape.svg"));
  std::ifstream in(dir / "results.csv");
  const auto rows = trussopt::io::read_results_csv(in);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows.front().run_id, -1);
  EXPECT_TRUE(rows.front().cluster.has_value());
}

TEST(Cli, ConfigErrorsExitWithTwo) {
  const fs::path dir = scratch("bad");
  std::ofstream(dir / "bad.json") << R"({"model": "eight-member", "optimizer": {"population": 2}})";
  EXPECT_EQ(run("analyze --config " + (dir / "bad.json").string() + " --quiet --out " + dir.string()), 2);
  std::ofstream(dir / "syntax.json") << "{ nope";
  EXPECT_EQ(run("analyze --config " + (dir / "syntax.json").string() + " --quiet"), 2);
  EXPECT_EQ(run("analyze --benchmark nine-member --quiet"), 2);
  EXPECT_EQ(run("analyze --quiet"), 2);
}

TEST(Cli, SeedSphereFailureExitsWithThree) {
  const fs::path dir = scratch("seed");
  std::ofstream(dir / "c.json") << R"({"model": "two-bar-oracle", "strategy": "hypersphere",
    "optimizer": {"max_generations": 1, "population": 4},
    "hypersphere": {"tol_opt": 1e-15}})";
  EXPECT_EQ(run("analyze --config " + (dir / "c.json").string() + " --quiet --out " + dir.string()), 3);
}

TEST(Cli, ExportModel) {
  const fs::path dir = scratch("export");
  EXPECT_EQ(run("export-model --benchmark sixteen-member --out " + (dir / "m.json").string()), 0);
  EXPECT_NE(slurp(dir / "m.json").find("\"members\""), std::string::npos);
  EXPECT_EQ(run("export-model --benchmark nine-member --out " + (dir / "m.json").string()), 2);
}
