#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "kloost/cli.hpp"

using namespace kloost;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ComputeStar) {
  CliRun r = run({"compute", "--group", "gln", "--weyl", "star", "--p", "5", "--r", "1,1,1", "--psi",
               "1,1,1", "--psi-prime", "1,1,1", "--json"});
  ASSERT_EQ(r.code, kExitOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["complex"]["re"].get<double>(), 30.0);
  EXPECT_EQ(j["complex"]["im"].get<double>(), 0.0);
  EXPECT_NE(r.out.find("\"re\": 30.0"), std::string::npos);
}

TEST(Cli, ComputeCsv) {
  CliRun r = run({"compute", "--p", "3", "--r", "1,1", "--csv"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("gln,long,3,1;1,1;1,1;1,4,0,4,9,10"), std::string::npos) << r.out;
}

TEST(Cli, ComputeGl4) {
  CliRun r = run({"compute", "--group", "gl4", "--weyl", "blockswap", "--p", "2", "--r", "1,1,1"});
  EXPECT_EQ(r.code, kExitOk);
}

TEST(Cli, MissingPrimeIsUsageError) {
  CliRun r = run({"compute", "--r", "1,1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--p"), std::string::npos);
  EXPECT_EQ(run({"compute"}).code, kExitUsage);
}

TEST(Cli, BadInputsAreUsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"compute", "--p", "4", "--r", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"compute", "--p", "3", "--r", "1,x"}).code, kExitUsage);
  EXPECT_EQ(run({"compute", "--p", "3", "--r", "1,1", "--psi", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"compute", "--p", "3", "--r", "1,1", "--budget", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, VerifyExitCodes) {
  CliRun ok = run({"verify", "--suite", "exact-evals"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("PASS criterion 1"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "shift-invariance"}).code, kExitVerifyFailed);
}

TEST(Cli, Count) {
  CliRun r = run({"count", "--weyl", "long", "--p", "3", "--r", "1,1"});
  ASSERT_EQ(r.code, kExitOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["stratum_count"], 2);
  EXPECT_EQ(j["total_cosets"], 10);
}

TEST(Cli, Decompose) {
  CliRun r = run({"decompose", "--weyl", "long", "--p", "3", "--params", "2:1,1:1,4:2"});
  ASSERT_EQ(r.code, kExitOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 2);
  EXPECT_TRUE(j["closed_form_agrees"].get<bool>());
  EXPECT_EQ(run({"decompose", "--p", "3", "--params", "2:1,1:1"}).code, kExitUsage);
}

TEST(Cli, ScanIsDeterministic) {
  std::vector<std::string> args{"scan", "--p", "3", "--n", "2", "--r-budget", "3", "--psi", "1,2"};
  CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("weyl,p,r", 0), 0u);
}
