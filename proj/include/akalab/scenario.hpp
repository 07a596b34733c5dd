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

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "akalab/deployment.hpp"
#include "akalab/meter.hpp"

namespace akalab {

enum class AttackKind { Replay, Internal, ForgeCard, Eavesdrop, MasqueradeUser, MasqueradeServer };

inline constexpr AttackKind kAllAttacks[] = {
    AttackKind::Internal,  AttackKind::Replay,         AttackKind::ForgeCard,
    AttackKind::Eavesdrop, AttackKind::MasqueradeUser, AttackKind::MasqueradeServer,
};

std::string_view to_string(AttackKind kind);
// Throws Error on an unknown name.
AttackKind parse_attack(std::string_view name);

enum class Verdict { Success, Failure };
std::string_view to_string(Verdict verdict);

struct ScenarioConfig {
  std::uint64_t seed = 0;
  Millis delta_t = dpi::kDefaultFreshnessWindow;
  // Replay only: time between the recorded session and the replay.
  // Defaults to delta_t + 1 ms.
  std::optional<Millis> replay_delay;
};

struct AttackReport {
  AttackKind kind = AttackKind::Replay;
  Protocol target = Protocol::Li;
  Verdict verdict = Verdict::Failure;
  std::optional<std::pair<Party, RejectReason>> rejected;
  // Ordered key/value facts: knowledge gained, checks against ground truth.
  std::vector<std::pair<std::string, std::string>> facts;
  std::set<Party> deceived;
  std::optional<FieldElement> attacker_sk;
  std::optional<FieldElement> victim_sk;
  HashMeter attacker_work;
  // Honest-party hashes spent on the attacker's messages.
  HashMeter victim_work;
  Transcript transcript;
};

/// Provisions an insider ("mallory"), a victim ("alice") and two servers,
/// records whatever honest sessions the attack needs, runs the attack, and
/// judges it against ground truth.
AttackReport run_attack(AttackKind kind, Protocol target, const ScenarioConfig& config = {});

}  // namespace akalab
