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

#include "akalab/scenario.hpp"

#include <functional>

#include "akalab/adversary.hpp"
#include "akalab/errors.hpp"
#include "akalab/hash.hpp"

namespace akalab {
namespace {

using namespace adversary;

constexpr std::uint64_t kSecretStream = 200;
constexpr std::uint64_t kAdversaryStream = 300;

const Identity kServerN("srv-n");
const Identity kServerP("srv-p");
const Identity kInsider("mallory");
const Identity kVictim("alice");
const Identity kForged("eve-forged");
const Password kInsiderPassword{"mallory-pw"};
const Password kVictimPassword{"alice-pw"};
constexpr const char* kVictimSession = "victim-1";
constexpr const char* kLiveSession = "victim-2";

std::string yes_no(bool v) { return v ? "yes" : "no"; }

// Shared scenario scaffolding: one deployment, a wiretap, attacker
// randomness, and the report being filled in.
template <typename Net>
struct Scene {
  Net& net;
  AdversaryKnowledge knowledge;
  Wiretap tap;
  Rng adversary_rng;
  AttackReport report;

  Scene(Net& n, const ScenarioConfig& config, AttackKind kind)
      : net(n), tap(n.channel(), knowledge), adversary_rng(config.seed, kAdversaryStream) {
    report.kind = kind;
    report.target = n.protocol();
  }

  void fact(std::string key, std::string value) {
    report.facts.emplace_back(std::move(key), std::move(value));
  }

  // Records one honest alice -> srv-n session under `label`.
  SessionResult victim_session(const std::string& label) {
    tap.label(label);
    auto result = run_session(net, kVictim.text(), kServerN);
    if (!result.keys_agree()) throw StateError("victim session did not complete");
    report.victim_sk = result.user.session_key;
    return result;
  }

  const Bytes& recorded(const std::string& label, int index) const {
    const auto* entry = knowledge.find(label, net.message_type(index));
    if (entry == nullptr) throw StateError("message not recorded");
    return entry->bytes;
  }

  // Runs an active attack with both work meters in place.
  AttackOutcome attack(const std::function<AttackOutcome()>& body) {
    tap.label("attack");
    net.meter().reset();
    AttackOutcome outcome;
    {
      MeterInstall install(report.attacker_work);
      outcome = body();
    }
    report.victim_work = net.meter();
    report.rejected = outcome.rejected;
    report.attacker_sk = outcome.attacker_sk;
    for (Party p : outcome.accepted_by) report.deceived.insert(p);
    fact("accepted_by", accepted_list(outcome));
    if (outcome.rejected) {
      fact("rejected_by", std::string(to_string(outcome.rejected->first)));
      fact("reason", std::string(to_string(outcome.rejected->second)));
    }
    return outcome;
  }

  template <typename F>
  auto passive(F&& body) {
    MeterInstall install(report.attacker_work);
    return body();
  }

  static std::string accepted_list(const AttackOutcome& outcome) {
    std::string out;
    for (Party p : outcome.accepted_by) {
      if (!out.empty()) out += ",";
      out += to_string(p);
    }
    return out.empty() ? "none" : out;
  }

  // Ground-truth key of the honest party `party` in `outcome`.
  std::optional<FieldElement> truth(const AttackOutcome& outcome, Party party) const {
    auto it = outcome.sessions.find(party);
    if (it == outcome.sessions.end()) return std::nullopt;
    return net.session_key(party, it->second);
  }

  AttackReport finish(bool success) {
    report.verdict = success ? Verdict::Success : Verdict::Failure;
    report.transcript = net.channel().transcript();
    return std::move(report);
  }
};

template <typename Net>
void judge_replay(Scene<Net>& s, const ScenarioConfig& config) {
  s.victim_session(kVictimSession);
  const Bytes m1 = s.recorded(kVictimSession, 1);
  const Millis delay = config.replay_delay.value_or(config.delta_t + Millis{1});
  s.net.clock().advance(delay);
  s.fact("replay_delay_ms", std::to_string(delay.count()));
  s.attack([&] { return attack_replay(s.net, kServerN, m1); });
  s.fact("sk_derivation", "unavailable");
}

template <typename Net>
bool replay_succeeded(const Scene<Net>& s) {
  return s.report.deceived.count(Party::Server) && s.report.deceived.count(Party::ControlServer);
}

// --- Baseline ------------------------------------------------------------------

struct LiWorld {
  CsSecrets secrets;
  LiDeployment net;

  explicit LiWorld(const ScenarioConfig& config)
      : secrets(make_secrets(config.seed)), net(deployment_config(config), secrets) {
    net.register_server(kServerN);
    net.register_server(kServerP);
    net.register_user(kInsider, kInsiderPassword);
    net.register_user(kVictim, kVictimPassword);
  }

  static CsSecrets make_secrets(std::uint64_t seed) {
    Rng rng(seed, kSecretStream);
    CsSecrets s{random_field(rng), random_field(rng)};
    return s;
  }

  static DeploymentConfig deployment_config(const ScenarioConfig& config) {
    DeploymentConfig dc;
    dc.seed = config.seed;
    dc.server_window = config.delta_t;
    dc.cs_window = config.delta_t;
    return dc;
  }
};

AttackReport run_li(AttackKind kind, const ScenarioConfig& config) {
  LiWorld world(config);
  LiDeployment& net = world.net;
  Scene<LiDeployment> s(net, config, kind);
  if (kind == AttackKind::Replay) {
    judge_replay(s, config);
    return s.finish(replay_succeeded(s));
  }

  const InsiderSecrets insider = s.passive(
      [&] { return attack_internal_li(net.card(kInsider.text()), kInsider, kInsiderPassword); });
  s.knowledge.h_y = insider.h_y;
  s.knowledge.h_yx = insider.h_yx;
  const FieldElement true_h_y = hash_of(world.secrets.y);
  const FieldElement true_h_yx = hash_of(world.secrets.y, world.secrets.x);

  auto eavesdrop = [&](const std::string& label) {
    const li::M1 m1 = li::decode_m1(s.recorded(label, 1));
    const li::M4 m4 = li::decode_m4(s.recorded(label, 4));
    auto result = s.passive([&] { return attack_eavesdrop_li(m1, m4, insider, kServerN); });
    result.derived.source = label;
    s.knowledge.victims[label] = result.derived;
    return result;
  };

  switch (kind) {
    case AttackKind::Internal: {
      const bool ok = insider.h_y == true_h_y && insider.h_yx == true_h_yx;
      s.fact("h_y", insider.h_y.hex());
      s.fact("h_yx", insider.h_yx.hex());
      s.fact("matches_cs_secrets", yes_no(ok));
      return s.finish(ok);
    }
    case AttackKind::Replay:
      break;  // handled above
    case AttackKind::ForgeCard: {
      const FieldElement num1 = random_field(s.adversary_rng);
      const FieldElement num2 = random_field(s.adversary_rng);
      const SmartCardLi card =
          s.passive([&] { return attack_forge_card_li(insider, kForged, num1, num2); });
      s.fact("forged_identity", kForged.text());
      auto outcome = s.attack([&] {
        return use_forged_card_li(net, card, kForged, num1, kServerN, s.adversary_rng);
      });
      const auto server_sk = s.truth(outcome, Party::Server);
      const auto cs_sk = s.truth(outcome, Party::ControlServer);
      s.report.victim_sk = server_sk;
      const bool ok = outcome.attacker_sk && server_sk && cs_sk &&
                      *outcome.attacker_sk == *server_sk && *server_sk == *cs_sk;
      return s.finish(ok);
    }
    case AttackKind::Eavesdrop: {
      s.victim_session(kVictimSession);
      auto result = eavesdrop(kVictimSession);
      s.report.attacker_sk = result.derived.session_key;
      const SmartCardLi& card = net.card(kVictim.text());
      const FieldElement true_a = hash_of(card.b, kVictimPassword);
      s.fact("recovered", "A,B,E,N1,N2^N3");
      s.fact("a_matches_card", yes_no(*result.derived.a == true_a));
      s.fact("v_check", result.consistent ? "pass" : "fail");
      const bool ok = result.consistent && s.report.attacker_sk == s.report.victim_sk;
      if (ok) s.report.deceived.insert(Party::User);
      return s.finish(ok);
    }
    case AttackKind::MasqueradeUser: {
      s.victim_session(kVictimSession);
      const auto stolen = eavesdrop(kVictimSession).derived;
      auto outcome = s.attack([&] {
        return attack_masquerade_user_li(net, stolen, insider, kServerP, s.adversary_rng);
      });
      const auto server_sk = s.truth(outcome, Party::Server);
      s.report.victim_sk = server_sk;
      s.fact("impersonated", kVictim.text());
      const bool ok = outcome.accepted_by.count(Party::ControlServer) && outcome.attacker_sk &&
                      server_sk && *outcome.attacker_sk == *server_sk;
      return s.finish(ok);
    }
    case AttackKind::MasqueradeServer: {
      s.victim_session(kVictimSession);
      const auto stolen = eavesdrop(kVictimSession).derived;
      if (s.knowledge.recorded_server_pairs.empty()) throw StateError("no (K, M) recorded");
      const auto km = s.knowledge.recorded_server_pairs.front().second;

      // srv-n is down: the victim's next M1 is routed to the attacker.
      s.tap.label(kLiveSession);
      auto begun = net.user_begin(kVictim.text(), kServerN);
      const Emitted m1 = begun.value();
      net.channel().deliver(Party::User, Party::Adversary, net.message_type(1), m1.bytes);

      auto outcome = s.attack([&] {
        return attack_masquerade_server_li(net, km, m1.bytes, m1.session, kServerN, stolen,
                                           insider);
      });
      const auto user_sk = s.truth(outcome, Party::User);
      s.report.victim_sk = user_sk;
      s.fact("impersonated", kServerN.text());
      const bool ok = outcome.accepted_by.count(Party::ControlServer) &&
                      outcome.accepted_by.count(Party::User) && outcome.attacker_sk &&
                      user_sk && *outcome.attacker_sk == *user_sk;
      return s.finish(ok);
    }
  }
  throw Error("unhandled attack");
}

// --- Pseudonym protocol ----------------------------------------------------------

struct DpiWorld {
  CsSecrets secrets;
  DpiDeployment net;

  explicit DpiWorld(const ScenarioConfig& config)
      : secrets(LiWorld::make_secrets(config.seed)),
        net(LiWorld::deployment_config(config), dpi::CsRegistry(secrets)) {
    net.register_server(kServerN);
    net.register_server(kServerP);
    net.register_user(kInsider, kInsiderPassword);
    net.register_user(kVictim, kVictimPassword);
  }
};

AttackReport run_dpi(AttackKind kind, const ScenarioConfig& config) {
  DpiWorld world(config);
  DpiDeployment& net = world.net;
  Scene<DpiDeployment> s(net, config, kind);
  if (kind == AttackKind::Replay) {
    judge_replay(s, config);
    return s.finish(replay_succeeded(s));
  }

  const DpiInsider insider = s.passive(
      [&] { return attack_internal_dpi(net.card(kInsider.text()), kInsider, kInsiderPassword); });

  switch (kind) {
    case AttackKind::Internal: {
      // Nothing on the insider's card is shared with other users.
      const std::vector<FieldElement> shared = {
          world.secrets.x, world.secrets.y, hash_of(world.secrets.y),
          hash_of(world.secrets.y, world.secrets.x), hash_of(world.secrets.x, world.secrets.y)};
      bool leaked = false;
      for (const auto& v : {insider.a, insider.b, insider.pid, insider.salt}) {
        for (const auto& secret : shared) leaked = leaked || v == secret;
      }
      s.fact("shared_secret_extracted", yes_no(leaked));
      s.victim_session(kVictimSession);
      const dpi::M1 victim_m1 = dpi::decode_m1(s.recorded(kVictimSession, 1));
      s.fact("impersonated", kVictim.text());
      auto outcome = s.attack([&] {
        return impersonate_with_insider_dpi(net, insider, victim_m1.pid, kServerN,
                                            s.adversary_rng);
      });
      return s.finish(leaked || outcome.accepted_by.count(Party::ControlServer));
    }
    case AttackKind::Replay:
      break;  // handled above
    case AttackKind::ForgeCard: {
      const FieldElement salt = random_field(s.adversary_rng);
      const FieldElement num1 = random_field(s.adversary_rng);
      const FieldElement num2 = random_field(s.adversary_rng);
      const SmartCardDpi card =
          s.passive([&] { return attack_forge_card_dpi(kForged, salt, num1, num2); });
      s.fact("forged_identity", kForged.text());
      auto outcome = s.attack([&] {
        return use_forged_card_dpi(net, card, kForged, num1, kServerN, s.adversary_rng);
      });
      const auto server_sk = s.truth(outcome, Party::Server);
      s.report.victim_sk = server_sk;
      const bool ok = outcome.accepted_by.count(Party::ControlServer) &&
                      outcome.accepted_by.count(Party::Server);
      return s.finish(ok);
    }
    case AttackKind::Eavesdrop: {
      s.victim_session(kVictimSession);
      const dpi::M1 m1 = dpi::decode_m1(s.recorded(kVictimSession, 1));
      const dpi::M4 m4 = dpi::decode_m4(s.recorded(kVictimSession, 4));
      auto result = s.passive([&] { return attack_eavesdrop_dpi(m1, m4, insider); });
      result.derived.source = kVictimSession;
      s.knowledge.victims[kVictimSession] = result.derived;
      s.report.attacker_sk = result.derived.session_key;
      s.fact("v_check", result.consistent ? "pass" : "fail");
      const bool ok = result.consistent && s.report.attacker_sk == s.report.victim_sk;
      if (ok) s.report.deceived.insert(Party::User);
      return s.finish(ok);
    }
    case AttackKind::MasqueradeUser: {
      s.victim_session(kVictimSession);
      const dpi::M1 m1 = dpi::decode_m1(s.recorded(kVictimSession, 1));
      s.fact("impersonated", kVictim.text());
      auto outcome = s.attack([&] { return attack_masquerade_user_dpi(net, m1, kServerP); });
      return s.finish(outcome.accepted_by.count(Party::ControlServer) > 0);
    }
    case AttackKind::MasqueradeServer: {
      s.victim_session(kVictimSession);
      const dpi::M2 recorded_m2 = dpi::decode_m2(s.recorded(kVictimSession, 2));

      s.tap.label(kLiveSession);
      auto begun = net.user_begin(kVictim.text(), kServerN);
      const Emitted m1 = begun.value();
      net.channel().deliver(Party::User, Party::Adversary, net.message_type(1), m1.bytes);
      s.fact("impersonated", kServerN.text());
      auto outcome = s.attack([&] {
        return attack_masquerade_server_dpi(net, recorded_m2, m1.bytes, m1.session);
      });
      return s.finish(outcome.accepted_by.count(Party::ControlServer) &&
                      outcome.accepted_by.count(Party::User));
    }
  }
  throw Error("unhandled attack");
}

}  // namespace

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Replay: return "replay";
    case AttackKind::Internal: return "internal";
    case AttackKind::ForgeCard: return "forge-card";
    case AttackKind::Eavesdrop: return "eavesdrop";
    case AttackKind::MasqueradeUser: return "masquerade-user";
    case AttackKind::MasqueradeServer: return "masquerade-server";
  }
  return "unknown";
}

AttackKind parse_attack(std::string_view name) {
  for (AttackKind kind : kAllAttacks) {
    if (to_string(kind) == name) return kind;
  }
  throw Error("unknown attack: " + std::string(name));
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::Success ? "SUCCESS" : "FAILURE";
}

AttackReport run_attack(AttackKind kind, Protocol target, const ScenarioConfig& config) {
  return target == Protocol::Li ? run_li(kind, config) : run_dpi(kind, config);
}

}  // namespace akalab
