#include <gtest/gtest.h>

#include <fstream>

#include "json.hpp"
#include "test_support.hpp"

namespace {

std::string cli() { return FRESHML_CLI_PATH; }
std::string prog(const std::string& name) { return std::string(FRESHML_PROGRAMS_DIR) + "/" + name; }

std::pair<int, std::string> sh(const std::string& args) {
  return oracle::shell("'" + cli() + "' " + args, true);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, RunExamples) {
  auto [code, out] = sh("run '" + prog("unit.fml") + "'");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(first_line(out), "TERMINATED 0 ()");

  auto a = sh("run '" + prog("remark21_a.fml") + "' --state '#a0,#a1'");
  EXPECT_EQ(first_line(a.second), "TERMINATED 13 Zero()");
  auto b = sh("run '" + prog("remark21_b.fml") + "' --state '#a0,#a1'");
  EXPECT_EQ(first_line(b.second), "TERMINATED 13 Succ(Zero())");

  auto d = sh("run '" + prog("diverge.fml") + "' --fuel 50");
  EXPECT_EQ(d.first, 2);
  EXPECT_EQ(first_line(d.second), "FUEL 50");
}

TEST(Cli, RunTraceCountsSteps) {
  auto [code, out] = sh("run '" + prog("remark21_a.fml") + "' --state '#a0' --trace");
  EXPECT_EQ(code, 0);
  std::size_t lines = std::count(out.begin(), out.end(), '\n');
  EXPECT_EQ(lines, 14u + 1u);  // configurations 0..13 then the outcome
  EXPECT_EQ(out.rfind("TERMINATED 13 Zero()"), out.size() - std::string("TERMINATED 13 Zero()\n").size());
}

TEST(Cli, RunPolicyFlag) {
  auto least = sh("run '" + prog("fresh.fml") + "' --state '#a1'");
  auto greatest = sh("run '" + prog("fresh.fml") + "' --state '#a1' --policy greatest");
  EXPECT_EQ(first_line(least.second), "TERMINATED 1 #a0");
  EXPECT_EQ(first_line(greatest.second), "TERMINATED 1 #a2");
}

TEST(Cli, RunStuckOnMissingAtom) {
  auto [code, out] = sh("run '" + prog("remark21_b.fml") + "' --state '#a0'");
  EXPECT_EQ(code, 3);
  EXPECT_EQ(out.rfind("STUCK", 0), 0u) << out;
}

TEST(Cli, Check) {
  auto f = sh("check '" + prog("fresh.fml") + "'");
  EXPECT_EQ(f.first, 0);
  EXPECT_EQ(first_line(f.second), "atm");
  auto l = sh("check '" + prog("lambda_sig.fml") + "'");
  EXPECT_EQ(l.second, "term\nnominal: yes\n");
  auto bad = sh("check '" + prog("illtyped.fml") + "'");
  EXPECT_EQ(bad.first, 1);
  EXPECT_EQ(bad.second.rfind("E_TYPE", 0), 0u);
}

TEST(Cli, SyntaxErrorCarriesLocation) {
  std::string path = testing::TempDir() + "bad.fml";
  std::ofstream(path) << "let x = \n  fst ()";
  auto [code, out] = sh("check '" + path + "'");
  EXPECT_EQ(code, 1);
  EXPECT_EQ(first_line(out), "E_SYNTAX at 2:9: expected 'in', found end of input");
}

TEST(Cli, MissingFile) {
  auto [code, out] = sh("run /nonexistent/x.fml");
  EXPECT_EQ(code, 1);
  EXPECT_EQ(out.rfind("E_IO", 0), 0u);
}

TEST(Cli, Alpha) {
  auto eq = sh("alpha '" + prog("bind_a0.fml") + "' '" + prog("bind_a1.fml") + "' --arity 'atm bnd'");
  EXPECT_EQ(eq.first, 0);
  EXPECT_EQ(first_line(eq.second), "ALPHA-EQ");
  auto ne = sh("alpha '" + prog("bind_a0.fml") + "' '" + prog("bind_a1_a0.fml") + "' --arity 'atm bnd' --json");
  auto j = nlohmann::json::parse(ne.second);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["alpha_eq"], false);
}

TEST(Cli, FuzzEquiv) {
  std::string common = " --type 'atm bnd' --world '#a0,#a1' --trials 300 --seed 7";
  auto same = sh("fuzz-equiv '" + prog("bind_a0.fml") + "' '" + prog("bind_a1.fml") + "'" + common);
  EXPECT_EQ(same.second.rfind("NoCounterexampleFound", 0), 0u) << same.second;
  auto diff = sh("fuzz-equiv '" + prog("bind_a0.fml") + "' '" + prog("bind_a1_a0.fml") + "'" + common + " --json");
  auto j = nlohmann::json::parse(diff.second);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["verdict"], "Distinguished");
  EXPECT_TRUE(j["counterexample"].contains("stack"));
  EXPECT_EQ(j["seed"], 7);
  // deterministic given the seed
  EXPECT_EQ(sh("fuzz-equiv '" + prog("bind_a0.fml") + "' '" + prog("bind_a1_a0.fml") + "'" + common + " --json").second,
            diff.second);
}

TEST(Cli, FuzzSafety) {
  auto [code, out] = sh("fuzz-safety --trials 200 --steps 100 --seed 3");
  EXPECT_EQ(code, 0);
  EXPECT_EQ(first_line(out), "PASS preservation+progress 200/200");
  auto j = nlohmann::json::parse(sh("fuzz-safety --trials 20 --json").second);
  EXPECT_EQ(j["verdict"], "PASS");
  EXPECT_EQ(j["configs"], 20);
}

TEST(Cli, ObsCheck) {
  auto [code, out] = sh("obs-check ord --trials 100");
  EXPECT_EQ(code, 0);
  EXPECT_NE(out.find("equivariance PASS"), std::string::npos);
  EXPECT_NE(out.find("affine FAIL"), std::string::npos);
  EXPECT_NE(out.find("witness"), std::string::npos);
  auto j = nlohmann::json::parse(sh("obs-check lt --trials 100 --json").second);
  EXPECT_EQ(j["equivariance"]["pass"], true);
  EXPECT_EQ(j["affine"]["pass"], true);
  auto unknown = sh("obs-check nope");
  EXPECT_EQ(unknown.first, 1);
}

TEST(Cli, EmitSwapTypeChecks) {
  std::string path = testing::TempDir() + "swap.fml";
  auto [code, out] = sh("emit-swap atm");
  ASSERT_EQ(code, 0);
  std::ofstream(path) << out;
  EXPECT_EQ(first_line(sh("check '" + path + "'").second), "atm -> atm -> atm -> atm");
}

TEST(Cli, EmitAeqUsesLambdaSignature) {
  auto [code, out] = sh("emit-aeq term");
  ASSERT_EQ(code, 0);
  EXPECT_EQ(out.rfind("fun(", 0), 0u);
  EXPECT_NE(out.find("unbind"), std::string::npos);
  EXPECT_EQ(sh("emit-aeq 'atm -> atm'").first, 1);
}

}  // namespace
