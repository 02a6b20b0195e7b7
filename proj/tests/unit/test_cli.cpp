#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "giantscope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = giantscope::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("giantscope_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& leaf) const { return (dir_ / leaf).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndVersion) {
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("rates"), std::string::npos);
  EXPECT_EQ(run({"rates", "--help"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliTest, ParseErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--seed", "1", "--out", path("x")}).code, 2);
  EXPECT_EQ(run({"simulate", "--n", "5", "--c", "1", "--p", "0.2", "--out", path("x")}).code, 2);
  EXPECT_EQ(run({"critical", "--seedless"}).code, 2);
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--c", "-1", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "nope", "--c", "2", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--c", "2", "--grid", "1:0:0.1", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--c", "2", "--grid", "0:1", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"exact", "--n", "9", "--p", "0.5", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"simulate", "--n", "0", "--c", "1", "--out", path("a")}).code, 2);
  EXPECT_EQ(run({"rates", "--fn", "i_alpha", "--c", "2", "--out", "/proc/giantscope/out"}).code, 2);
}

TEST_F(CliTest, RatesAreByteIdentical) {
  const std::vector<std::string> args{"rates", "--fn", "i_alpha", "--c", "2", "--grid", "0:1:0.001",
                                      "--seedless", "--out", path("r")};
  ASSERT_EQ(run(args).code, 0);
  const std::string first = slurp(path("r/rates.csv"));
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(first, slurp(path("r/rates.csv")));
  EXPECT_EQ(first.rfind("# giantscope ", 0), 0u);
  EXPECT_NE(first.find("# command rates"), std::string::npos);
  EXPECT_NE(first.find("c=2"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithOverride) {
  {
    std::ofstream cfg(path("run.ini"));
    cfg << "[rates]\nfn=i_beta\nc=3\ngrid=0:1:0.25\n";
  }
  ASSERT_EQ(run({"--config", path("run.ini"), "rates", "--c", "2", "--out", path("o")}).code, 0);
  const std::string csv = slurp(path("o/rates.csv"));
  EXPECT_NE(csv.find("c=2"), std::string::npos);
  EXPECT_EQ(csv.find("c=3"), std::string::npos);
  EXPECT_NE(csv.find("fn=i_beta"), std::string::npos);
  {
    std::ofstream cfg(path("bad.ini"));
    cfg << "[rates]\nfn=i_beta\nunknown_key=1\n";
  }
  EXPECT_EQ(run({"--config", path("bad.ini"), "rates", "--out", path("o")}).code, 2);
}

TEST_F(CliTest, InfiniteRatesUseLiteral) {
  ASSERT_EQ(run({"rates", "--fn", "i_U", "--c", "2", "--u", "0.4", "--grid", "0.5:0.9:0.2", "--out",
                 path("i")}).code,
            0);
  const std::string csv = slurp(path("i/rates.csv"));
  EXPECT_NE(csv.find(",inf"), std::string::npos) << csv;
  EXPECT_EQ(csv.find("nan"), std::string::npos) << csv;
}

TEST_F(CliTest, SimulateAgainstExactOracle) {
  ASSERT_EQ(run({"simulate", "--n", "6", "--c", "3", "--reps", "1000000", "--seed", "42", "--out",
                 path("s")}).code,
            0);
  EXPECT_TRUE(fs::exists(path("s/summary.json")));
  EXPECT_TRUE(fs::exists(path("s/spectrum.csv")));
  const auto r = run({"exact", "--n", "6", "--p", "0.5", "--compare", path("s/law.json"), "--out",
                      path("e")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto exact = nlohmann::json::parse(slurp(path("e/exact.json")));
  EXPECT_LE(exact["comparison"]["tv_distance"].get<double>(), 0.005);
  EXPECT_TRUE(exact.contains("meta"));

  // A mismatched law fails the check.
  const auto bad = run({"exact", "--n", "6", "--p", "0.2", "--compare", path("s/law.json"), "--out",
                        path("e2")});
  EXPECT_NE(bad.code, 0);
}

TEST_F(CliTest, PhaseAndBetaChecks) {
  ASSERT_EQ(run({"phase", "--c", "3", "--grid", "0:1:0.01", "--svg", "--out", path("p")}).code, 0);
  const auto phase = nlohmann::json::parse(slurp(path("p/phase.json")));
  EXPECT_TRUE(phase.contains("meta"));
  EXPECT_TRUE(fs::exists(path("p/i_alpha.svg")));
  EXPECT_EQ(slurp(path("p/i_alpha.svg")).find("<svg") != std::string::npos, true);
  ASSERT_EQ(run({"beta-ldp", "--c", "3", "--grid", "0:1:0.01", "--out", path("b")}).code, 0);
  EXPECT_TRUE(fs::exists(path("b/beta_ldp.csv")));
}

TEST_F(CliTest, TrajectoryChecksPass) {
  const auto r = run({"traj", "--c", "2", "--cells", "20000", "--out", path("t")});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_TRUE(fs::exists(path("t/traj.json")));
}

TEST_F(CliTest, RandomCommandsAreDeterministic) {
  const std::vector<std::string> crit{"critical", "--theta", "1", "--reps", "20", "--seed", "3",
                                      "--dt", "0.01", "--out", path("c")};
  ASSERT_EQ(run(crit).code, 0);
  const std::string first = slurp(path("c/critical.csv"));
  ASSERT_EQ(run(crit).code, 0);
  EXPECT_EQ(first, slurp(path("c/critical.csv")));
  const std::vector<std::string> clt{"clt-check", "--c", "2", "--n", "2000", "--reps", "50",
                                     "--seed", "4", "--out", path("k")};
  ASSERT_EQ(run(clt).code, 0);
  const std::string a = slurp(path("k/clt.json"));
  ASSERT_EQ(run(clt).code, 0);
  EXPECT_EQ(a, slurp(path("k/clt.json")));
}
