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

#include "akalab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "akalab/deployment.hpp"
#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/registry_io.hpp"
#include "akalab/reports.hpp"
#include "akalab/scenario.hpp"

namespace akalab {
namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

constexpr std::uint64_t kSaltStream = 100;
constexpr std::uint64_t kServerSaltStream = 101;
constexpr std::uint64_t kSecretStream = 200;

struct Config {
  std::string protocol = "dpi";
  std::uint64_t seed = 0;
  std::uint64_t delta_t_ms = 5000;
  std::uint64_t latency_ms = 0;
  std::optional<std::uint64_t> replay_delay_ms;
  std::string registry;
  std::string card;
  std::string transcript_out;
  bool trace = false;
};

struct RegisterArgs {
  std::string kind;
  std::string id;
  std::optional<std::string> password;
};

struct SessionArgs {
  std::string user;
  std::string password;
  std::string server;
};

struct AttackArgs {
  std::string name;
  std::string target;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(std::string(flag) + " is required for this command");
}

dpi::CsRegistry open_or_create_registry(const Config& cfg) {
  if (std::filesystem::exists(cfg.registry)) return load_registry(cfg.registry);
  Rng rng(cfg.seed, kSecretStream);
  const FieldElement x = random_field(rng);
  const FieldElement y = random_field(rng);
  return dpi::CsRegistry(CsSecrets{x, y});
}

void write_transcript(const Config& cfg, const Transcript& transcript, std::ostream& out) {
  if (!cfg.transcript_out.empty()) {
    export_transcript(transcript, cfg.transcript_out);
    out << "transcript: " << cfg.transcript_out << "\n";
  }
  if (cfg.trace) {
    for (const auto& e : transcript) {
      out << "msg: " << e.seq << " " << to_string(e.from) << "->" << to_string(e.to) << " "
          << e.type << " " << to_hex(e.bytes) << "\n";
    }
  }
}

void print_meter(const HashMeter& meter, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, n] : meter.counts()) {
    out << prefix << to_string(key.first) << "." << to_string(key.second) << ": " << n << "\n";
  }
}

int cmd_register(const Config& cfg, const RegisterArgs& args, std::ostream& out) {
  require(cfg.registry, "--registry");
  const Protocol protocol = parse_protocol(cfg.protocol);
  dpi::CsRegistry registry = open_or_create_registry(cfg);
  const CsSecrets secrets = registry.secrets();
  const Identity id(args.id);

  if (args.kind == "server") {
    for (const auto& [psid, record] : registry.servers()) {
      if (record.sid == id) throw RegistrationError("duplicate server " + id.text());
    }
    Rng rng(cfg.seed, kServerSaltStream);
    const auto credential = dpi::register_server(registry, id, random_field(rng));
    persist_registry(registry, cfg.registry);
    out << "server: " << id.text() << "\n";
    out << "psid: " << credential.psid.hex() << "\n";
    out << "VERDICT: REGISTERED\n";
    return kOk;
  }
  if (args.kind != "user") throw Error("register kind must be user or server");
  if (!args.password) throw Error("--password is required to register a user");
  require(cfg.card, "--card");
  for (const auto& [pid, record] : registry.users()) {
    if (record.id == id) throw RegistrationError("duplicate user " + id.text());
  }

  const Password password{*args.password};
  Rng rng(cfg.seed, kSaltStream);
  const FieldElement salt = random_field(rng);
  const FieldElement a = hash_of(salt, password);
  SmartCard card;
  if (protocol == Protocol::Li) {
    registry.insert_user(dpi::pseudonym(id, salt), dpi::UserRecord{id, salt, a});
    card = issue_card_li(id, password, salt, secrets.x, secrets.y);
  } else {
    const FieldElement b = dpi::register_user(registry, id, salt, a);
    card = personalize_card_dpi(id, password, salt, b);
  }
  save_card(card, cfg.card);
  persist_registry(registry, cfg.registry);
  out << "user: " << id.text() << "\n";
  out << "pid: " << dpi::pseudonym(id, salt).hex() << "\n";
  out << "card: " << cfg.card << "\n";
  out << "VERDICT: REGISTERED\n";
  return kOk;
}

void print_party(const char* name, const PartyOutcome& p, std::ostream& out) {
  switch (p.status) {
    case PartyStatus::Accepted: out << name << ": accepted\n"; break;
    case PartyStatus::Rejected: out << name << ": rejected (" << to_string(*p.reason) << ")\n"; break;
    case PartyStatus::NotReached: out << name << ": not reached\n"; break;
  }
  if (p.session_key) out << "sk." << name << ": " << p.session_key->hex() << "\n";
}

int cmd_session(const Config& cfg, const SessionArgs& args, std::ostream& out) {
  require(cfg.registry, "--registry");
  require(cfg.card, "--card");
  const Protocol protocol = parse_protocol(cfg.protocol);
  const dpi::CsRegistry registry = load_registry(cfg.registry);
  const SmartCard card = load_card(cfg.card);
  const Identity user(args.user);
  const Identity server(args.server);
  const Password password{args.password};

  DeploymentConfig dc;
  dc.seed = cfg.seed;
  dc.server_window = Millis(cfg.delta_t_ms);
  dc.cs_window = Millis(cfg.delta_t_ms);
  SessionOptions options;
  options.latency = Millis(cfg.latency_ms);

  const auto credential = dpi::server_credential(registry, server);
  if (!credential) throw Error("unknown server " + server.text());

  SessionResult result;
  if (protocol == Protocol::Li) {
    if (!std::holds_alternative<SmartCardLi>(card)) throw Error("card is not a li card");
    LiDeployment net(dc, registry.secrets());
    net.add_user(user, password, std::get<SmartCardLi>(card));
    net.register_server(server);
    result = run_session(net, user.text(), server, options);
  } else {
    if (!std::holds_alternative<SmartCardDpi>(card)) throw Error("card is not a dpi card");
    DpiDeployment net(dc, registry);
    net.add_user(user, password, std::get<SmartCardDpi>(card));
    net.add_server(*credential);
    result = run_session(net, user.text(), server, options);
  }

  out << "protocol: " << to_string(protocol) << "\n";
  print_party("user", result.user, out);
  print_party("server", result.server, out);
  print_party("cs", result.cs, out);
  out << "messages: " << result.transcript.size() << "\n";
  print_meter(result.meter, "hashes.", out);
  write_transcript(cfg, result.transcript, out);

  if (result.keys_agree()) {
    out << "VERDICT: SK MATCH\n";
    return kOk;
  }
  if (auto rejection = result.rejection()) {
    if (rejection->second == RejectReason::Login) {
      out << "VERDICT: login rejected\n";
    } else {
      out << "VERDICT: " << to_string(rejection->first) << " rejected ("
          << to_string(rejection->second) << ")\n";
    }
  } else {
    out << "VERDICT: SK MISMATCH\n";
  }
  return kNegative;
}

std::string party_list(const std::set<Party>& parties) {
  std::string s;
  for (Party p : parties) s += (s.empty() ? "" : ",") + std::string(to_string(p));
  return s.empty() ? "none" : s;
}

int cmd_attack(const Config& cfg, const AttackArgs& args, std::ostream& out) {
  const AttackKind kind = parse_attack(args.name);
  const Protocol target = parse_protocol(args.target);
  ScenarioConfig sc;
  sc.seed = cfg.seed;
  sc.delta_t = Millis(cfg.delta_t_ms);
  if (cfg.replay_delay_ms) sc.replay_delay = Millis(*cfg.replay_delay_ms);

  const AttackReport report = run_attack(kind, target, sc);
  out << "attack: " << to_string(kind) << "\n";
  out << "target: " << to_string(target) << "\n";
  for (const auto& [key, value] : report.facts) out << key << ": " << value << "\n";
  out << "deceived: " << party_list(report.deceived) << "\n";
  out << "attacker_sk: " << (report.attacker_sk ? report.attacker_sk->hex() : "none") << "\n";
  out << "victim_sk: " << (report.victim_sk ? report.victim_sk->hex() : "none") << "\n";
  out << "sk_match: "
      << (report.attacker_sk && report.attacker_sk == report.victim_sk ? "yes" : "no") << "\n";
  out << "work.adversary: " << report.attacker_work.total() << "\n";
  out << "work.server: " << report.victim_work.total(Role::Server) << "\n";
  out << "work.cs: " << report.victim_work.total(Role::ControlServer) << "\n";
  if (cfg.trace) print_meter(report.attacker_work, "hashes.", out);
  write_transcript(cfg, report.transcript, out);

  out << "VERDICT: " << to_string(report.verdict);
  if (report.verdict == Verdict::Failure && report.rejected) {
    out << " (" << to_string(report.rejected->second) << ")";
  }
  out << "\n";
  return report.verdict == Verdict::Success ? kOk : kNegative;
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }
const char* yes(bool v) { return v ? "Yes" : "No"; }

int report_table3(const Config& cfg, std::ostream& out) {
  ScenarioConfig sc;
  sc.seed = cfg.seed;
  sc.delta_t = Millis(cfg.delta_t_ms);
  if (cfg.replay_delay_ms) sc.replay_delay = Millis(*cfg.replay_delay_ms);
  bool all = true;
  for (const auto& row : security_matrix(sc)) {
    out << row.label << ": ours " << yes(row.dpi) << " " << pass(row.pass_dpi()) << " / Li "
        << yes(row.li) << " " << pass(row.pass_li()) << "\n";
    all = all && row.pass_dpi() && row.pass_li();
  }
  out << "VERDICT: " << pass(all) << "\n";
  return all ? kOk : kNegative;
}

void cell(std::ostream& out, const char* name, std::uint64_t measured, std::uint64_t expected) {
  out << "  " << name << ": " << measured;
  if (measured != expected) out << " (expected " << expected << ")";
  out << " " << pass(measured == expected) << "\n";
}

int report_table4(const Config& cfg, std::ostream& out) {
  bool all = true;
  for (Protocol p : {Protocol::Li, Protocol::Dpi}) {
    const auto cmp = measure_complexity(p, cfg.seed);
    const auto& m = cmp.measured;
    const auto& e = cmp.published;
    out << (p == Protocol::Li ? "Li" : "ours") << ": " << m.user_login << " / " << m.user_ake
        << " / " << m.server_ake << " / " << m.cs_ake;
    if (m.cs_optional != 0 || e.cs_optional != 0) out << "(+" << m.cs_optional << ")";
    out << "\n";
    cell(out, "user login", m.user_login, e.user_login);
    cell(out, "user ake", m.user_ake, e.user_ake);
    cell(out, "server ake", m.server_ake, e.server_ake);
    cell(out, "cs ake", m.cs_ake, e.cs_ake);
    if (cfg.trace) {
      cell(out, "cs ake with traceability", m.cs_ake + m.cs_optional,
           e.cs_ake + e.cs_optional);
      out << "  user card-unmask: " << m.user_card_unmask << "\n";
      out << "  session-key hashes: " << m.user_sk << "/" << m.server_sk << "/" << m.cs_sk
          << "\n";
    }
    all = all && cmp.all_ok();
  }
  out << "VERDICT: " << pass(all) << "\n";
  return all ? kOk : kNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smart-card multi-server authentication lab", "aka_lab"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--protocol", cfg.protocol, "li or dpi")->check(CLI::IsMember({"li", "dpi"}));
  app.add_option("--seed", cfg.seed, "random seed")->envname("AKA_LAB_SEED");
  app.add_option("--delta-t-ms", cfg.delta_t_ms, "freshness window");
  app.add_option("--latency-ms", cfg.latency_ms, "simulated latency per hop");
  app.add_option("--replay-delay-ms", cfg.replay_delay_ms, "delay before a replay");
  app.add_option("--registry", cfg.registry, "control-server registry file");
  app.add_option("--card", cfg.card, "smart card file");
  app.add_option("--transcript-out", cfg.transcript_out, "write the transcript as JSON lines");
  app.add_flag("--trace", cfg.trace, "print messages and per-phase hash counts");

  RegisterArgs reg;
  auto* register_cmd = app.add_subcommand("register", "register a user or server");
  register_cmd->add_option("kind", reg.kind)->required()->check(CLI::IsMember({"user", "server"}));
  register_cmd->add_option("id", reg.id)->required();
  register_cmd->add_option("--password", reg.password);

  SessionArgs sess;
  auto* session_cmd = app.add_subcommand("session", "run one honest session");
  session_cmd->add_option("--user", sess.user)->required();
  session_cmd->add_option("--password", sess.password)->required();
  session_cmd->add_option("--server", sess.server)->required();

  AttackArgs atk;
  auto* attack_cmd = app.add_subcommand("attack", "run a named attack scenario");
  attack_cmd->add_option("name", atk.name)->required();
  attack_cmd->add_option("target", atk.target)->required();

  std::string which;
  auto* report_cmd = app.add_subcommand("report", "reproduce a comparison table");
  report_cmd->add_option("which", which)->required()->check(CLI::IsMember({"table3", "table4"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*register_cmd) return cmd_register(cfg, reg, out);
    if (*session_cmd) return cmd_session(cfg, sess, out);
    if (*attack_cmd) return cmd_attack(cfg, atk, out);
    if (which == "table3") return report_table3(cfg, out);
    return report_table4(cfg, out);
  } catch (const RegistrationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const EncodingError& e) {
    err << "error: encoding error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace akalab
