#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "irrigation/cli.hpp"

namespace irr {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, TheoryConstants) {
  const auto r = run({"theory", "--d", "2", "--delta", "0.5", "--eps", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["k1"], 19);
  EXPECT_EQ(doc["k2"], 246);
  EXPECT_EQ(doc["k3"], 16);
  EXPECT_EQ(doc["c_total"], 282);
  EXPECT_DOUBLE_EQ(doc["alpha_d"].get<double>(), 0.05625);
  for (const char* key : {"delta", "eps", "d", "p_d", "cstar", "penrose_radius", "lower_bound_c"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
}

TEST(Cli, TheoryCsv) {
  const auto r = run({"theory", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k2,246\n"), std::string::npos);
}

TEST(Cli, ConnectForcedPair) {
  const auto r = run({"connect", "--n", "2", "--d", "1", "--r", "1", "--c", "1", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["connected"], true);
  EXPECT_EQ(doc["components"], 1);
}

TEST(Cli, ConnectProtocol) {
  const auto r = run({"connect", "--n", "500", "--delta", "0.5", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.contains("phase1"));
  EXPECT_EQ(doc["budgets"]["c_total"], 282);
}

TEST(Cli, SweepWritesIdenticalFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "irrigation_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = (dir / "a.csv").string();
  const auto b = (dir / "b.csv").string();
  const std::vector<std::string> base{"sweep-c", "--n", "500", "--d", "2", "--r", "0.75", "--c-list", "1,2,3",
                                      "--trials", "100", "--seed", "1", "--out"};
  auto args_a = base;
  args_a.push_back(a);
  auto args_b = base;
  args_b.push_back(b);
  ASSERT_EQ(run(args_a).code, 0);
  ASSERT_EQ(run(args_b).code, 0);
  const auto text = slurp(a);
  EXPECT_EQ(text.substr(0, text.find('\n')), "param,value,successes,trials,p_hat,ci_low,ci_high");
  EXPECT_EQ(text, slurp(b));
  std::filesystem::remove_all(dir);
}

TEST(Cli, JsonRecordFormat) {
  const auto r = run({"sweep-r", "--n", "200", "--r-list", "0.05,0.2", "--c", "2", "--trials", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["config"]["mode"], "sweep_r");
}

TEST(Cli, InvalidArgumentsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"theory", "--nope"}).code, 2);
  EXPECT_EQ(run({"theory", "--delta", "0.5", "--d", "0"}).code, 2);
  EXPECT_EQ(run({"sweep-c", "--n", "100", "--c-list", "1,2"}).code, 2);            // no radius
  EXPECT_EQ(run({"sweep-c", "--n", "100", "--r", "0.1", "--c-list", "2,1"}).code, 2);  // not ascending
  EXPECT_EQ(run({"sweep-r", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"protocol", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"theory", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"theory", "--delta", "0.5", "--eps", "1.5"}).code, 2);
  const auto r = run({"bogus"});
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sweep-c"), std::string::npos);
  EXPECT_EQ(run({"protocol", "--help"}).code, 0);
}

}  // namespace
}  // namespace irr
