// Copyright 2026 The aka-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "akalab/cli.hpp"
#include "akalab/sim.hpp"

namespace akalab {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;

  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("akalab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    registry_ = (dir_ / "registry.txt").string();
    card_ = (dir_ / "alice.card").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun register_pair(const std::string& protocol) {
    auto s = cli({"register", "server", "srv-n", "--registry", registry_, "--protocol", protocol});
    EXPECT_EQ(s.code, 0) << s.err;
    return cli({"register", "user", "alice", "--password", "pw", "--registry", registry_,
                "--card", card_, "--protocol", protocol});
  }

  fs::path dir_;
  std::string registry_;
  std::string card_;
};

TEST_F(CliTest, RegisterWritesCardAndRegistry) {
  const auto r = register_pair("dpi");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(card_));
  EXPECT_TRUE(fs::exists(registry_));
  EXPECT_TRUE(r.has("pid: "));
}

TEST_F(CliTest, DuplicateRegistrationFails) {
  ASSERT_EQ(register_pair("dpi").code, 0);
  const auto again = cli({"register", "user", "alice", "--password", "pw", "--registry",
                          registry_, "--card", card_});
  EXPECT_NE(again.code, 0);
  EXPECT_NE(again.err.find("duplicate"), std::string::npos) << again.err;
}

TEST_F(CliTest, OverlongIdentityIsAnEncodingError) {
  const auto r = cli({"register", "user", std::string(33, 'a'), "--password", "pw",
                      "--registry", registry_, "--card", card_});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("encoding"), std::string::npos) << r.err;
}

TEST_F(CliTest, HonestSessionMatches) {
  for (const std::string protocol : {"dpi", "li"}) {
    SetUp();
    ASSERT_EQ(register_pair(protocol).code, 0);
    const auto transcript = (dir_ / "t.jsonl").string();
    const auto r = cli({"session", "--user", "alice", "--password", "pw", "--server", "srv-n",
                        "--registry", registry_, "--card", card_, "--protocol", protocol,
                        "--transcript-out", transcript});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(r.has("VERDICT: SK MATCH"));
    EXPECT_TRUE(r.has("messages: 4"));
    std::ifstream in(transcript);
    EXPECT_EQ(parse_transcript(in).size(), 4u);
  }
}

TEST_F(CliTest, WrongPasswordIsRejected) {
  ASSERT_EQ(register_pair("dpi").code, 0);
  const auto r = cli({"session", "--user", "alice", "--password", "nope", "--server", "srv-n",
                      "--registry", registry_, "--card", card_});
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(r.has("login rejected"));
}

TEST_F(CliTest, ZeroWindowWithLatencyTimesOut) {
  ASSERT_EQ(register_pair("dpi").code, 0);
  const auto r = cli({"session", "--user", "alice", "--password", "pw", "--server", "srv-n",
                      "--registry", registry_, "--card", card_, "--delta-t-ms", "0",
                      "--latency-ms", "1"});
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(r.has("timeout")) << r.out;
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  ::setenv("AKA_LAB_SEED", "42", 1);
  const auto env = cli({"register", "user", "alice", "--password", "pw", "--registry",
                        registry_, "--card", card_});
  ::unsetenv("AKA_LAB_SEED");
  fs::remove(registry_);
  const auto flag = cli({"register", "user", "alice", "--password", "pw", "--registry",
                         registry_, "--card", card_, "--seed", "42"});
  ASSERT_EQ(env.code, 0);
  ASSERT_EQ(flag.code, 0);
  EXPECT_EQ(env.out, flag.out);
}

TEST(Cli, AttackVerdicts) {
  const auto li = cli({"attack", "eavesdrop", "li"});
  EXPECT_EQ(li.code, 0);
  EXPECT_TRUE(li.has("sk_match: yes"));
  EXPECT_TRUE(li.has("VERDICT: SUCCESS"));

  const auto dpi = cli({"attack", "eavesdrop", "dpi"});
  EXPECT_EQ(dpi.code, 1);
  EXPECT_TRUE(dpi.has("VERDICT: FAILURE"));

  const auto replay = cli({"attack", "replay", "dpi"});
  EXPECT_EQ(replay.code, 1);
  EXPECT_TRUE(replay.has("VERDICT: FAILURE (timeout)"));
}

TEST(Cli, UnknownAttackName) {
  const auto r = cli({"attack", "phishing", "li"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown attack"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(cli({}).code, 2); }

TEST(Cli, Table3PassesAndIsDeterministic) {
  const auto a = cli({"report", "table3", "--seed", "9"});
  const auto b = cli({"report", "table3", "--seed", "9"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(a.has("Resistance of replay attack: ours Yes PASS / Li No PASS"));
}

TEST(Cli, Table4ListsBothRows) {
  const auto r = cli({"report", "table4", "--trace"});
  EXPECT_TRUE(r.has("Li: 2 / 8 / 4 / 13\n"));
  EXPECT_TRUE(r.has("ours: 2 / 6 / 5 / "));
  EXPECT_TRUE(r.has("cs ake with traceability"));
  // Exit status mirrors whether every cell matched.
  EXPECT_EQ(r.code == 0, r.has("VERDICT: PASS"));
}

}  // namespace
}  // namespace akalab
