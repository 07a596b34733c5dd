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

#include "akalab/reports.hpp"


namespace akalab {

std::vector<SecurityRow> security_matrix(const ScenarioConfig& config) {
  std::vector<SecurityRow> rows = {
      {"Resistance of Insider attack", {AttackKind::Internal, AttackKind::ForgeCard}},
      {"Resistance of replay attack", {AttackKind::Replay}},
      {"Resistance of Deny-of-Service attack", {AttackKind::Replay}},
      {"Resistance of eavesdrop attack", {AttackKind::Eavesdrop}},
      {"Resistance of masquerade attack",
       {AttackKind::MasqueradeUser, AttackKind::MasqueradeServer}},
  };
  for (auto& row : rows) {
    const bool dos = row.label.find("Deny") != std::string::npos;
    for (Protocol p : {Protocol::Li, Protocol::Dpi}) {
      bool resists = true;
      for (AttackKind kind : row.attacks) {
        const AttackReport report = run_attack(kind, p, config);
        resists = resists && report.verdict == Verdict::Failure;
        if (dos) resists = resists && report.victim_work.total() == 0;
      }
      (p == Protocol::Li ? row.li : row.dpi) = resists;
    }
  }
  return rows;
}

ComplexityComparison measure_complexity(Protocol protocol, std::uint64_t seed) {
  Rng secret_rng(seed, 200);
  const CsSecrets secrets{random_field(secret_rng), random_field(secret_rng)};
  DeploymentConfig config;
  config.seed = seed;
  const Identity user("alice");
  const Identity server("srv-n");
  const Password password{"alice-pw"};

  ComplexityComparison out;
  out.protocol = protocol;
  out.published = published_complexity(protocol);
  SessionResult result;
  if (protocol == Protocol::Li) {
    LiDeployment net(config, secrets);
    net.register_server(server);
    net.register_user(user, password);
    result = run_session(net, user.text(), server);
  } else {
    DpiDeployment net(config, dpi::CsRegistry(secrets));
    net.register_server(server);
    net.register_user(user, password);
    result = run_session(net, user.text(), server);
  }
  if (!result.keys_agree()) throw StateError("metered session did not complete");
  out.measured = meter_report(result.meter);
  return out;
}

}  // namespace akalab
