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

#include <set>

#include "akalab/adversary.hpp"
#include "akalab/errors.hpp"
#include "akalab/scenario.hpp"
#include "oracle.hpp"
#include "world.hpp"

namespace akalab {
namespace {

using namespace adversary;
using testing_world::make_world;
using testing_world::secrets_for;
using testing_world::WorldSetup;

const Identity kServer("srv-n");

TEST(InternalAttack, ExtractsSharedSecretsForAnyInsider) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const CsSecrets secrets{random_field(rng), random_field(rng)};
    const Identity id("user-" + std::to_string(i));
    const Password pw{"pw" + std::to_string(rng.next_u64())};
    const SmartCardLi card = issue_card_li(id, pw, random_field(rng), secrets.x, secrets.y);
    const auto got = attack_internal_li(card, id, pw);
    EXPECT_EQ(got.h_y, oracle::H({oracle::raw(secrets.y)}));
    EXPECT_EQ(got.h_yx, oracle::H({oracle::raw(secrets.y), oracle::raw(secrets.x)}));
  }
}

TEST(ForgedCard, DistinctNumbersGiveDistinctKeys) {
  WorldSetup setup;
  setup.protocol = Protocol::Li;
  auto base = make_world(setup);
  auto& net = dynamic_cast<LiDeployment&>(*base);
  const auto insider = attack_internal_li(net.card("alice"), Identity("alice"), Password{"alice-pw"});
  Rng rng(8);
  std::set<FieldElement> keys;
  for (int i = 0; i < 2; ++i) {
    const FieldElement num1 = random_field(rng), num2 = random_field(rng);
    const Identity forged("ghost");
    const auto card = attack_forge_card_li(insider, forged, num1, num2);
    EXPECT_EQ(card.c, oracle::H({oracle::id("ghost"), oracle::raw(insider.h_y), oracle::raw(num1)}));
    const auto outcome = use_forged_card_li(net, card, forged, num1, kServer, rng);
    ASSERT_TRUE(outcome.attacker_sk.has_value());
    EXPECT_EQ(*outcome.attacker_sk,
              *net.session_key(Party::ControlServer, outcome.sessions.at(Party::ControlServer)));
    keys.insert(*outcome.attacker_sk);
  }
  EXPECT_EQ(keys.size(), 2u);
}

TEST(Eavesdrop, RecoversCardSecretsOfTheVictim) {
  WorldSetup setup;
  setup.protocol = Protocol::Li;
  auto base = make_world(setup);
  auto& net = dynamic_cast<LiDeployment&>(*base);
  net.register_user(Identity("mallory"), Password{"m"});
  const auto insider = attack_internal_li(net.card("mallory"), Identity("mallory"), Password{"m"});
  const auto result = run_session(net, "alice", kServer);
  const auto got = attack_eavesdrop_li(li::decode_m1(result.transcript[0].bytes),
                                       li::decode_m4(result.transcript[3].bytes), insider, kServer);
  const auto& card = net.card("alice");
  const FieldElement a = oracle::H({oracle::raw(card.b), oracle::pw("alice-pw")});
  const FieldElement b = oracle::H({oracle::id("alice"), oracle::raw(net.secrets().x)});
  EXPECT_TRUE(got.consistent);
  EXPECT_EQ(*got.derived.a, a);
  EXPECT_EQ(*got.derived.b, b);
  EXPECT_EQ(*got.derived.e, card.e);
  EXPECT_EQ(*got.derived.session_key, *result.user.session_key);
}

TEST(Eavesdrop, WithoutATapNothingIsLearned) {
  // The attacker's only inputs are wire bytes: with the tap removed its
  // knowledge stays empty no matter how many sessions run.
  WorldSetup setup;
  setup.protocol = Protocol::Li;
  auto base = make_world(setup);
  AdversaryKnowledge knowledge;
  {
    Wiretap tap(base->channel(), knowledge);
    base->channel().clear_taps();
  }
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(run_session(*base, "alice", kServer).keys_agree());
  EXPECT_TRUE(knowledge.transcripts.empty());
  EXPECT_TRUE(knowledge.recorded_server_pairs.empty());
  EXPECT_TRUE(knowledge.victims.empty());
}

TEST(Wiretap, LabelsAndHarvestsServerPairs) {
  WorldSetup setup;
  setup.protocol = Protocol::Li;
  auto base = make_world(setup);
  AdversaryKnowledge knowledge;
  Wiretap tap(base->channel(), knowledge);
  tap.label("s1");
  run_session(*base, "alice", kServer);
  ASSERT_EQ(knowledge.transcripts.size(), 4u);
  EXPECT_NE(knowledge.find("s1", "li.m2"), nullptr);
  EXPECT_EQ(knowledge.find("s2", "li.m2"), nullptr);
  ASSERT_EQ(knowledge.recorded_server_pairs.size(), 1u);
  EXPECT_EQ(knowledge.recorded_server_pairs[0].first, "s1");
  const auto m2 = li::decode_m2(knowledge.find("s1", "li.m2")->bytes);
  EXPECT_EQ(knowledge.recorded_server_pairs[0].second, std::pair(m2.k, m2.m));
}

TEST(Replay, InsideTheWindowProceedsWithoutAKey) {
  ScenarioConfig config;
  config.replay_delay = Millis{10};
  const auto report = run_attack(AttackKind::Replay, Protocol::Dpi, config);
  EXPECT_TRUE(report.deceived.count(Party::Server));
  EXPECT_TRUE(report.deceived.count(Party::ControlServer));
  EXPECT_FALSE(report.attacker_sk.has_value());
  EXPECT_GT(report.victim_work.total(), 0u);
}

TEST(Replay, AfterTheWindowCostsTheServerNothing) {
  const auto report = run_attack(AttackKind::Replay, Protocol::Dpi);
  EXPECT_EQ(report.verdict, Verdict::Failure);
  EXPECT_EQ(report.rejected, std::pair(Party::Server, RejectReason::Timeout));
  EXPECT_EQ(report.victim_work.total(), 0u);

  const auto li = run_attack(AttackKind::Replay, Protocol::Li);
  EXPECT_EQ(li.verdict, Verdict::Success);
  EXPECT_GT(li.victim_work.total(Role::ControlServer), 0u);
}

struct Expectation {
  AttackKind kind;
  std::optional<RejectReason> dpi_reason;
};

void PrintTo(const Expectation& e, std::ostream* os) { *os << to_string(e.kind); }

class AttackMatrix : public ::testing::TestWithParam<Expectation> {};

TEST_P(AttackMatrix, SucceedsOnBaselineAndFailsOnPseudonymProtocol) {
  const auto [kind, reason] = GetParam();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ScenarioConfig config;
    config.seed = seed;
    const auto li = run_attack(kind, Protocol::Li, config);
    EXPECT_EQ(li.verdict, Verdict::Success) << to_string(kind) << " seed " << seed;
    const auto dpi = run_attack(kind, Protocol::Dpi, config);
    EXPECT_EQ(dpi.verdict, Verdict::Failure) << to_string(kind) << " seed " << seed;
    if (reason) {
      ASSERT_TRUE(dpi.rejected.has_value());
      EXPECT_EQ(dpi.rejected->second, *reason) << to_string(kind);
    }
    if (kind != AttackKind::Replay && kind != AttackKind::Internal) {
      ASSERT_TRUE(li.attacker_sk.has_value());
      EXPECT_EQ(li.attacker_sk, li.victim_sk);
      EXPECT_TRUE(!dpi.attacker_sk || dpi.attacker_sk != dpi.victim_sk);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    All, AttackMatrix,
    ::testing::Values(Expectation{AttackKind::Internal, RejectReason::UserAuth},
                      Expectation{AttackKind::Replay, RejectReason::Timeout},
                      Expectation{AttackKind::ForgeCard, RejectReason::UserAuth},
                      Expectation{AttackKind::Eavesdrop, std::nullopt},
                      Expectation{AttackKind::MasqueradeUser, RejectReason::UserAuth},
                      Expectation{AttackKind::MasqueradeServer, RejectReason::ServerAuth}),
    [](const auto& info) {
      std::string name(to_string(info.param.kind));
      std::erase(name, '-');
      return name;
    });

TEST(Scenario, ReportsAreDeterministic) {
  ScenarioConfig config;
  config.seed = 5;
  const auto a = run_attack(AttackKind::Eavesdrop, Protocol::Li, config);
  const auto b = run_attack(AttackKind::Eavesdrop, Protocol::Li, config);
  EXPECT_EQ(a.transcript, b.transcript);
  EXPECT_EQ(a.attacker_sk, b.attacker_sk);
}

TEST(Scenario, AttackNames) {
  for (AttackKind kind : kAllAttacks) EXPECT_EQ(parse_attack(to_string(kind)), kind);
  EXPECT_THROW(parse_attack("phishing"), Error);
}

}  // namespace
}  // namespace akalab
