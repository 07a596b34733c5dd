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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "akalab/adversary.hpp"
#include "akalab/cli.hpp"
#include "akalab/deployment.hpp"
#include "akalab/reports.hpp"
#include "akalab/wire.hpp"
#include "tamper.hpp"

#ifndef AKA_LAB_BINARY
#error "AKA_LAB_BINARY must name the CLI executable"
#endif

namespace {

using namespace akalab;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr int kHonestSessionsPerProtocol = 200;
constexpr double kHonestRuntimeLimitSeconds = 1.0;
constexpr int kEavesdropRuns = 50;
constexpr int kTamperSamplesPerMessage = 48;  // 96 per protocol
constexpr int kMinTamperSamples = 64;
constexpr int kAnonymityRuns = 100;
constexpr std::int64_t kWindowMs = 5000;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << "[criterion " << n << "] " << (ok ? "PASS" : "FAIL") << " " << detail << "\n";
  if (!ok) ++failures;
}

std::string random_text(Rng& rng, std::size_t max_len) {
  const std::size_t len = 1 + rng.next_u64() % max_len;
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(0x21 + rng.next_u64() % 94));
  return s;
}

CsSecrets fresh_secrets(Rng& rng) {
  const FieldElement x = random_field(rng);
  return CsSecrets{x, random_field(rng)};
}

struct Population {
  std::string user;
  std::string server;
  Password password;
};

Population random_population(Rng& rng) {
  Population p{random_text(rng, 32), random_text(rng, 32), Password{random_text(rng, 24)}};
  if (p.server == p.user) p.server += "s";
  if (p.server.size() > 32) p.server = p.server.substr(1);
  return p;
}

std::unique_ptr<Deployment> deploy(Protocol protocol, std::uint64_t seed, const CsSecrets& secrets,
                                   const Population& pop, Millis window = Millis{kWindowMs}) {
  DeploymentConfig config;
  config.seed = seed;
  config.server_window = window;
  config.cs_window = window;
  if (protocol == Protocol::Li) {
    auto net = std::make_unique<LiDeployment>(config, secrets);
    net->register_server(Identity(pop.server));
    net->register_user(Identity(pop.user), pop.password);
    return net;
  }
  auto net = std::make_unique<DpiDeployment>(config, dpi::CsRegistry(secrets));
  net->register_server(Identity(pop.server));
  net->register_user(Identity(pop.user), pop.password);
  return net;
}

int four_message_violations = 0;
int completed_sessions = 0;

void note_completed(const SessionResult& r) {
  if (!r.completed()) return;
  ++completed_sessions;
  if (r.transcript.size() != 4) ++four_message_violations;
}

void honest_runs() {
  Rng rng(0xC1);
  int agreed = 0, total = 0;
  const auto start = Clock::now();
  for (Protocol p : {Protocol::Li, Protocol::Dpi}) {
    for (int i = 0; i < kHonestSessionsPerProtocol; ++i) {
      const auto pop = random_population(rng);
      auto net = deploy(p, rng.next_u64(), fresh_secrets(rng), pop);
      const auto r = run_session(*net, pop.user, Identity(pop.server));
      note_completed(r);
      agreed += r.keys_agree() ? 1 : 0;
      ++total;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream d;
  d << "honest key agreement: " << agreed << "/" << total << " sessions agreed in " << secs
    << " s (limit " << kHonestRuntimeLimitSeconds << " s)";
  report(1, agreed == total && secs < kHonestRuntimeLimitSeconds, d.str());
}

void complexity() {
  const auto li = measure_complexity(Protocol::Li, 0);
  const auto dpi = measure_complexity(Protocol::Dpi, 0);
  std::ostringstream d;
  auto row = [&](const char* name, const ComplexityComparison& c) {
    const auto& m = c.measured;
    const auto& e = c.published;
    d << name << " login " << m.user_login << "/" << e.user_login << ", user " << m.user_ake
      << "/" << e.user_ake << ", server " << m.server_ake << "/" << e.server_ake << ", cs "
      << m.cs_ake << "/" << e.cs_ake << ", cs with traceability " << m.cs_ake + m.cs_optional
      << "/" << e.cs_ake + e.cs_optional;
  };
  d << "hash counts measured/published: ";
  row("li", li);
  d << "; ";
  row("dpi", dpi);
  report(2, li.all_ok() && dpi.all_ok(), d.str());
}

int cli_code(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

void attack_matrix() {
  int matched = 0, total = 0;
  std::string mismatches;
  for (AttackKind kind : kAllAttacks) {
    const std::string name(to_string(kind));
    std::string out;
    const bool li_ok = cli_code({"attack", name, "li"}, &out) == 0 &&
                       out.find("VERDICT: SUCCESS") != std::string::npos;
    const bool dpi_ok = cli_code({"attack", name, "dpi"}, &out) == 1 &&
                        out.find("VERDICT: FAILURE") != std::string::npos;
    matched += li_ok + dpi_ok;
    total += 2;
    if (!li_ok) mismatches += " " + name + "/li";
    if (!dpi_ok) mismatches += " " + name + "/dpi";
  }
  std::string table;
  const bool table_ok = cli_code({"report", "table3"}, &table) == 0;
  std::ostringstream d;
  d << "attack matrix: " << matched << "/" << total
    << " verdicts match (li SUCCESS, dpi FAILURE); security table rows "
    << (table_ok ? "all PASS" : "mismatch") << mismatches;
  report(3, matched == total && table_ok, d.str());
}

void eavesdrop() {
  Rng rng(0xE4);
  int li_hits = 0, dpi_misses = 0;
  for (int i = 0; i < kEavesdropRuns; ++i) {
    const auto pop = random_population(rng);
    const CsSecrets secrets = fresh_secrets(rng);
    const std::uint64_t seed = rng.next_u64();
    for (Protocol p : {Protocol::Li, Protocol::Dpi}) {
      auto net = deploy(p, seed, secrets, pop);
      const Identity insider("insider-" + std::to_string(i));
      const Password insider_pw{"insider-pw"};
      const Identity server(pop.server);
      const auto r = run_session(*net, pop.user, server);
      note_completed(r);
      if (p == Protocol::Li) {
        auto& li = dynamic_cast<LiDeployment&>(*net);
        const auto& card = li.register_user(insider, insider_pw);
        const auto secrets_out = adversary::attack_internal_li(card, insider, insider_pw);
        const auto got = adversary::attack_eavesdrop_li(li::decode_m1(r.transcript[0].bytes),
                                                        li::decode_m4(r.transcript[3].bytes),
                                                        secrets_out, server);
        li_hits += got.consistent && got.derived.session_key == r.user.session_key;
      } else {
        auto& dpi = dynamic_cast<DpiDeployment&>(*net);
        const auto& card = dpi.register_user(insider, insider_pw);
        const auto ins = adversary::attack_internal_dpi(card, insider, insider_pw);
        const auto got = adversary::attack_eavesdrop_dpi(dpi::decode_m1(r.transcript[0].bytes),
                                                         dpi::decode_m4(r.transcript[3].bytes),
                                                         ins);
        dpi_misses += !got.consistent && got.derived.session_key != r.user.session_key;
      }
    }
  }
  std::ostringstream d;
  d << "eavesdrop recovery: li " << li_hits << "/" << kEavesdropRuns << " keys recovered, dpi "
    << dpi_misses << "/" << kEavesdropRuns << " recoveries failed";
  report(4, li_hits == kEavesdropRuns && dpi_misses == kEavesdropRuns, d.str());
}

void tampering() {
  Rng rng(0x7A);
  std::ostringstream d;
  bool ok = true;
  d << "single-bit tampering of m1/m2:";
  for (Protocol p : {Protocol::Li, Protocol::Dpi}) {
    int correct = 0, samples = 0;
    for (int index : {1, 2}) {
      for (int i = 0; i < kTamperSamplesPerMessage; ++i) {
        const auto pop = random_population(rng);
        auto net = deploy(p, rng.next_u64(), fresh_secrets(rng), pop);
        const auto trial = tamper::run(*net, pop.user, Identity(pop.server), index, rng.next_u64());
        correct += trial.expect.has_value() && trial.got == trial.expect;
        ++samples;
      }
    }
    d << (p == Protocol::Li ? " " : "; ") << to_string(p) << " " << correct << "/" << samples
      << " rejected with the expected label";
    ok = ok && correct == samples && samples >= kMinTamperSamples;
  }
  report(5, ok, d.str());
}

void freshness() {
  Rng rng(0xF5);
  const auto pop = random_population(rng);
  const CsSecrets secrets = fresh_secrets(rng);
  auto delayed = [&](std::int64_t delay) {
    auto net = deploy(Protocol::Dpi, 1, secrets, pop);
    SessionOptions o;
    o.interventions.push_back(Intervention::delay_by(1, Millis{delay}));
    return run_session(*net, pop.user, Identity(pop.server), o);
  };
  auto skewed = [&](std::int64_t skew) {
    auto net = deploy(Protocol::Dpi, 1, secrets, pop);
    net->clock().set_skew(Party::ControlServer, Millis{skew});
    return run_session(*net, pop.user, Identity(pop.server));
  };
  const auto early = delayed(kWindowMs - 1);
  const auto late = delayed(kWindowMs + 1);
  const auto cs_early = skewed(kWindowMs - 1);
  const auto cs_late = skewed(kWindowMs + 1);
  note_completed(early);
  note_completed(cs_early);
  const auto timeout_at = [](const SessionResult& r, Party party) {
    return r.rejection() == std::pair(party, RejectReason::Timeout);
  };
  const bool ok = early.keys_agree() && timeout_at(late, Party::Server) && cs_early.keys_agree() &&
                  timeout_at(cs_late, Party::ControlServer);
  std::ostringstream d;
  d << "freshness window " << kWindowMs << " ms: server delay -1 ms "
    << (early.keys_agree() ? "accepts" : "rejects") << ", +1 ms "
    << (timeout_at(late, Party::Server) ? "times out at server" : "does not time out")
    << "; cs skew -1 ms " << (cs_early.keys_agree() ? "accepts" : "rejects") << ", +1 ms "
    << (timeout_at(cs_late, Party::ControlServer) ? "times out at cs" : "does not time out");
  report(6, ok, d.str());
}

std::set<FieldElement> pid_values(const Transcript& t) {
  std::set<FieldElement> out;
  for (const auto& e : t) {
    for (const auto& f : wire::parse(e.bytes)) {
      if (f.tag == static_cast<std::uint8_t>(wire::Tag::Pid)) out.insert(FieldElement::from_bytes(f.value));
    }
  }
  return out;
}

std::set<Bytes> all_values(const Transcript& t) {
  std::set<Bytes> out;
  for (const auto& e : t) {
    for (const auto& f : wire::parse(e.bytes)) out.insert(f.value);
  }
  return out;
}

void updates() {
  Rng rng(0x77);
  const auto pop = random_population(rng);
  auto base = deploy(Protocol::Dpi, 3, fresh_secrets(rng), pop);
  auto& net = dynamic_cast<DpiDeployment&>(*base);
  const Identity server(pop.server);

  // Password update: the new card must refuse the old password.
  const SmartCardDpi before_card = net.card(pop.user);
  const bool changed = net.update_password(pop.user, Password{"updated-" + pop.password.text}).ok();
  const bool old_rejected =
      !local_login_dpi(net.card(pop.user), Identity(pop.user), pop.password).ok();
  const auto after_pw = run_session(net, pop.user, server);
  note_completed(after_pw);

  // Pseudonym update.
  const auto before = run_session(net, pop.user, server);
  const bool rotated = net.rotate_pseudonym(pop.user).ok();
  const auto after = run_session(net, pop.user, server);
  note_completed(before);
  note_completed(after);
  const auto old_pids = pid_values(before.transcript);
  const auto after_fields = all_values(after.transcript);
  bool shared = false;
  for (const auto& pid : old_pids) {
    shared = shared || after_fields.count(Bytes(pid.bytes().begin(), pid.bytes().end())) > 0;
  }
  for (const auto& pid : pid_values(after.transcript)) shared = shared || old_pids.count(pid) > 0;

  const bool ok = changed && old_rejected && before_card != net.card(pop.user) &&
                  after_pw.keys_agree() && rotated && before.keys_agree() && after.keys_agree() &&
                  !shared;
  std::ostringstream d;
  d << "updates: password change " << (old_rejected ? "locks out old password" : "keeps old password")
    << " and " << (after_pw.keys_agree() ? "completes" : "fails") << " with the new one; pseudonym rotation "
    << (shared ? "leaves a shared PID value" : "shares no PID value across transcripts");
  report(7, ok, d.str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "akalab_acceptance";
  fs::create_directories(dir);
  bool ok = true;
  std::ostringstream d;
  d << "determinism across processes:";
  const char* sep = " ";
  for (const char* attack : {"eavesdrop li", "masquerade-server dpi"}) {
    std::string files[2];
    for (int i = 0; i < 2; ++i) {
      files[i] = (dir / ("run" + std::to_string(i) + ".jsonl")).string();
      fs::remove(files[i]);
      const std::string cmd = std::string("\"") + AKA_LAB_BINARY + "\" attack " + attack +
                              " --seed 7 --transcript-out \"" + files[i] + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      if (status == -1) files[i].clear();
    }
    // The CLI exits 0 on an attack SUCCESS and 1 on FAILURE; either is fine here.
    const std::string a = slurp(files[0]), b = slurp(files[1]);
    const bool same = !a.empty() && a == b;
    d << sep << "'" << attack << "' " << (same ? "identical" : "differs") << " (" << a.size()
      << " bytes)";
    sep = "; ";
    ok = ok && same;
  }
  fs::remove_all(dir);
  report(8, ok, d.str());
}

void anonymity() {
  Rng rng(0xA9);
  int clean = 0;
  for (int i = 0; i < kAnonymityRuns; ++i) {
    const auto pop = random_population(rng);
    auto net = deploy(Protocol::Dpi, rng.next_u64(), fresh_secrets(rng), pop);
    const auto r = run_session(*net, pop.user, Identity(pop.server));
    note_completed(r);
    const FieldElement id = Identity(pop.user).block();
    const FieldElement sid = Identity(pop.server).block();
    bool leak = !r.keys_agree();
    for (const auto& e : r.transcript) {
      for (const auto& f : wire::parse(e.bytes)) {
        if (f.value.size() != FieldElement::kSize) continue;
        const auto v = FieldElement::from_bytes(f.value);
        leak = leak || v == id || v == sid;
      }
    }
    clean += !leak;
  }
  std::ostringstream d;
  d << "anonymity scan: " << clean << "/" << kAnonymityRuns
    << " transcripts carry neither the padded user nor server identity";
  report(9, clean == kAnonymityRuns, d.str());
}

void message_count() {
  std::ostringstream d;
  d << "message count: " << completed_sessions - four_message_violations << "/"
    << completed_sessions << " completed sessions used exactly 4 messages";
  report(10, completed_sessions > 0 && four_message_violations == 0, d.str());
}

}  // namespace

int main() {
  honest_runs();
  complexity();
  attack_matrix();
  eavesdrop();
  tampering();
  freshness();
  updates();
  determinism();
  anonymity();
  message_count();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion failing")
            << "\n";
  return failures;
}
