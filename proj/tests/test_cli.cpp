#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brim/cli.hpp"

using namespace brim;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("brim-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
    pair_ = write("pair.txt", "vars 2\nideal a\ngen 2 0\ngen 0 1\nideal b\ngen 1 0\ngen 0 2\n");
    line_ = write("line.txt", "vars 1\nideal\ngen 1\nideal\ngen 1\n");
    nested_ = write("nested.txt", "vars 2\nideal\ngen 2 0\ngen 1 1\ngen 0 2\nideal\ngen 1 0\ngen 0 1\n");
    bad_ = write("bad.txt", "vars 2\nideal\ngen 1\n");
    corner_ = write("corner.txt", "vars 2\nideal\ngen 1 1\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::filesystem::path dir_;
  std::string pair_, line_, nested_, bad_, corner_;
};

}  // namespace

TEST_F(CliTest, BrSequencePrintsMultiplicities) {
  const Outcome r = run({"br-sequence", pair_});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("e^0 = 5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e^1 = 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("bases"), std::string::npos);
}

TEST_F(CliTest, BrSequenceJson) {
  const Outcome r = run({"br-sequence", line_, "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["sequence"].size(), 3u);
  EXPECT_EQ(doc["sequence"][0]["value"], "2");
  EXPECT_EQ(doc["sequence"][1]["value"], "1");
  EXPECT_EQ(doc["sequence"][2]["value"], "0");
  EXPECT_TRUE(doc["chain_holds"].get<bool>());
  EXPECT_EQ(run({"--json", "br-sequence", line_}).out, r.out);
}

TEST_F(CliTest, BrFunctionBothOnLine) {
  const Outcome r = run({"br-function", line_, "--both", "--p-max", "3", "--q-max", "10"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("0 mismatches"), std::string::npos) << r.out;
  const Outcome j = run({"br-function", line_, "--both", "--p-max", "3", "--q-max", "10", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  for (const auto& row : doc["rows"]) {
    const auto p = row["p"].get<std::uint64_t>(), q = row["q"].get<std::uint64_t>();
    EXPECT_EQ(row["brute"], std::to_string((p + q + 1) * p));
    if (!row["stratified"].is_null()) EXPECT_EQ(row["stratified"], row["brute"]);
  }
  EXPECT_EQ(doc["mismatches"], 0);
}

TEST_F(CliTest, BrFunctionFlagsAreExclusive) {
  EXPECT_EQ(run({"br-function", line_, "--fast", "--brute"}).code, kExitUsage);
}

TEST_F(CliTest, Colength) {
  const Outcome r = run({"colength", pair_});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("colength 2"), std::string::npos) << r.out;
  EXPECT_EQ(run({"colength", corner_}).code, kExitUsage);
  const Outcome allowed = run({"colength", corner_, "--allow-non-primary", "--json"});
  EXPECT_EQ(allowed.code, kExitOk) << allowed.err;
  const auto doc = nlohmann::json::parse(allowed.out);
  EXPECT_FALSE(doc["ideals"][0]["m_primary"].get<bool>());
  EXPECT_TRUE(doc["ideals"][0]["colength_box"].is_null());
}

TEST_F(CliTest, MultiplicityAndMixed) {
  const Outcome m = run({"multiplicity", pair_, "--json"});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  const auto doc = nlohmann::json::parse(m.out);
  EXPECT_EQ(doc["ideals"][0]["value"], "2");
  EXPECT_EQ(doc["sum"]["value"], "1");
  const Outcome x = run({"mixed", nested_});
  EXPECT_EQ(x.code, kExitOk);
  EXPECT_NE(x.out.find("sum = 7"), std::string::npos) << x.out;
}

TEST_F(CliTest, VerifyFileAndSelectedChecks) {
  const Outcome r = run({"verify", nested_, "nested-chain", "last-multiplicity"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("[pass] nested-chain"), std::string::npos) << r.out;
  EXPECT_EQ(run({"verify", nested_, "bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"verify"}).code, kExitUsage);
}

TEST_F(CliTest, VerifyBuiltinCorpus) {
  const Outcome r = run({"verify", "--builtin-corpus", "all", "--p-max", "2", "--q-max", "12"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find(" 0 failures"), std::string::npos);
}

TEST_F(CliTest, BudgetExhaustionIsComputationFailure) {
  const Outcome r = run({"br-sequence", pair_, "--budget", "0"});
  EXPECT_EQ(r.code, kExitComputation);
  EXPECT_NE(r.err.find("e^0"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerificationFailureExitCode) {
  EXPECT_EQ(run({"verify", pair_, "last-multiplicity", "--budget", "0"}).code, kExitVerification);
}

TEST_F(CliTest, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"br-sequence"}).code, kExitUsage);
  EXPECT_EQ(run({"br-sequence", (dir_ / "missing.txt").string()}).code, kExitUsage);
  const Outcome bad = run({"br-sequence", bad_});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"--threads", "many", "colength", pair_}).code, kExitUsage);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("br-sequence"), std::string::npos);
}

TEST_F(CliTest, JsonIsByteIdenticalAcrossRunsAndThreads) {
  const Outcome a = run({"mixed", pair_, "--json"});
  const Outcome b = run({"--threads", "3", "mixed", pair_, "--json"});
  EXPECT_EQ(a.out, b.out);
}
