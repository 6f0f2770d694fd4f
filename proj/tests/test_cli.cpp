#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "surfsing/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  surfsing::io::json json() const { return surfsing::io::json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "surfsing");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = surfsing::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(SURFSING_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST(Cli, VerifyTables) {
  const auto r = run({"verify-tables", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["table_rows_matched"], "15/15");
  EXPECT_EQ(r.json()["table_rows"][0]["computed"].dump(), "[1,2,3,2,1,2]");
  EXPECT_NE(run({"verify-tables"}).out.find("table_rows_matched: 15/15"), std::string::npos);
}

TEST(Cli, Catalog) {
  auto r = run({"catalog", "icosahedral", "--m", "1", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["graph"]["vertices"].size(), 8u);
  EXPECT_EQ(r.json()["derived_b"], 2);
  r = run({"catalog", "cyclic", "--n", "7", "--q", "3", "--format", "json"});
  EXPECT_EQ(r.json()["hj_expansion"].dump(), "[3,2,2]");
  EXPECT_EQ(run({"catalog", "dihedral", "--n", "5", "--q", "3"}).code, 0);
  EXPECT_EQ(run({"catalog", "tetrahedral", "--m", "2"}).code, 2);
  EXPECT_EQ(run({"catalog", "cyclic", "--m", "2"}).code, 2);
  EXPECT_EQ(run({"catalog", "heptagonal", "--m", "1"}).code, 2);
}

TEST(Cli, FundamentalCycle) {
  auto r = run({"fundcycle", fixture("e8.json"), "--oracle", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["fundamental_cycle"].dump(), "[2,4,6,5,4,3,2,3]");
  EXPECT_EQ(r.json()["oracle_agrees"], true);
  r = run({"fundcycle", fixture("d4.json"), "--policy", "random", "--format", "json"});
  EXPECT_EQ(r.json()["fundamental_cycle"].dump(), "[2,1,1,1]");
  EXPECT_EQ(run({"fundcycle", fixture("d4.json"), "--policy", "sideways"}).code, 2);
  EXPECT_EQ(run({"fundcycle", fixture("e8.json"), "--oracle", "--bound", "3"}).code, 2);
}

TEST(Cli, MalformedGraphsExitTwoWithLocation) {
  auto r = run({"fundcycle", fixture("disconnected.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("disconnected.json:8: NotConnected"), std::string::npos) << r.err;
  r = run({"fundcycle", fixture("minus_one_minimal.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("minus_one_minimal.json:5: NotMinimalResolution"), std::string::npos) << r.err;
  r = run({"fundcycle", fixture("unknown_key.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown_key.json:4: unknown key 'genus'"), std::string::npos) << r.err;
  r = run({"fundcycle", fixture("no_such_file.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, Sweep6E) {
  const auto r = run({"sweep-6e", "--max-n", "200", "--max-b", "10", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["global_max_coefficient"], 6);
  EXPECT_EQ(r.json()["attained_by"].dump(), R"x(["icosahedral(m=1)"])x");
  const auto small = run({"sweep-6e", "--max-n", "6", "--max-b", "2", "--details", "--format", "json"});
  EXPECT_EQ(small.json()["entries"].size(), small.json()["graphs"].get<std::size_t>());
}

TEST(Cli, GermCommands) {
  auto r = run({"discrepancy", fixture("germ_minus3_half.json"), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["exceptional_pullback_coeffs"].dump(), R"(["1/2"])");
  r = run({"mld", fixture("germ_minus3.json"), "--format", "json"});
  EXPECT_EQ(r.json()["mld"], "2/3");
  r = run({"mld", fixture("germ_smooth.json"), "--format", "json"});
  EXPECT_EQ(r.json()["mld"], "2");
  r = run({"lct-max-ideal", fixture("germ_e8.json"), "--format", "json"});
  EXPECT_EQ(r.json()["lct_maximal_ideal"], "1/6");
  r = run({"mld", fixture("germ_not_klt.json"), "--format", "json"});
  EXPECT_EQ(r.json()["mld"], "0");
  EXPECT_EQ(run({"mld", fixture("germ_bad_coefficient.json")}).code, 2);
  r = run({"mld", fixture("germ_smooth_three_lines.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("TooManyBranchesAtSmoothPoint"), std::string::npos);
}

TEST(Cli, CheckSurfaceBound) {
  auto r = run({"check-surface-bound", fixture("germ_e8.json"), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["epsilon"], "1");
  EXPECT_EQ(j["lct"], "1/6");
  EXPECT_EQ(j["required"], "1/24");
  EXPECT_EQ(j["passed"], true);
  r = run({"check-surface-bound", fixture("germ_smooth_two_lines.json"), "--format", "json"});
  EXPECT_EQ(r.json()["epsilon"], "7/6");
  r = run({"check-surface-bound", fixture("germ_not_klt.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotKLT"), std::string::npos);
  r = run({"check-surface-bound", "--sweep", "--max-n", "12", "--max-b", "2", "--boundaries", "5", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["passed"], true);
  EXPECT_EQ(run({"check-surface-bound"}).code, 2);
}

TEST(Cli, Monomial) {
  auto r = run({"monomial-mld", "--lambda", "3/4", "--exponents", "2,0;0,3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["mld"], "1/2");
  r = run({"monomial-mld", "--lambda", "1", "--exponents", "2,0;0,3", "--format", "json"});
  EXPECT_EQ(r.json()["mld"], "NotLC");
  r = run({"monomial-lct", "--exponents", "4,0;0,5", "--format", "json"});
  EXPECT_EQ(r.json()["lct"], "9/20");
  EXPECT_EQ(run({"monomial-lct", "--exponents", "4;0,5"}).code, 2);
  EXPECT_EQ(run({"monomial-lct", "--exponents", "0,0"}).code, 2);
  EXPECT_EQ(run({"monomial-mld", "--lambda", "x", "--exponents", "1,0"}).code, 2);
}

TEST(Cli, Example18) {
  auto r = run({"example18", "--m", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["rows"][0]["mld"], "1/3");
  EXPECT_EQ(r.json()["rows"][0]["non_lc_bound"], "1/9");
  r = run({"example18", "--max-m", "20", "--format", "json"});
  EXPECT_EQ(r.json()["rows"].size(), 20u);
  EXPECT_EQ(r.json()["passed"], true);
  EXPECT_EQ(run({"example18"}).code, 2);
}

TEST(Cli, PropertySuiteSmall) {
  const auto r = run({"property-suite", "--max-n", "12", "--max-b", "2", "--random-trees", "10", "--pairs", "20",
                      "--policies", "3", "--hj-max-n", "40", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_EQ(r.json()["checks"].size(), 5u);
}

TEST(Cli, DeterministicForSeed) {
  const std::vector<std::string> args{"check-surface-bound", "--sweep", "--max-n", "10", "--max-b", "2",
                                      "--boundaries", "4", "--format", "json", "--seed", "42"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "3"});
  EXPECT_EQ(run(jobs).out, a.out);
  const std::vector<std::string> ps{"property-suite", "--max-n", "10", "--max-b", "2", "--random-trees", "5",
                                    "--pairs", "10", "--policies", "2", "--hj-max-n", "20", "--format", "json"};
  EXPECT_EQ(run(ps).out, run(ps).out);
}
