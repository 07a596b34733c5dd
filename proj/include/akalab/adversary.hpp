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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "akalab/deployment.hpp"
#include "akalab/dpi.hpp"
#include "akalab/li2012.hpp"
#include "akalab/rng.hpp"
#include "akalab/sim.hpp"
#include "akalab/smartcard.hpp"

// Dolev-Yao attacker. Attack procedures see only wire bytes (through
// PublicNetwork), their own credentials, and what earlier attacks put into
// AdversaryKnowledge.
namespace akalab::adversary {

/// Secrets recovered about one victim session. `source` names the recorded
/// session they were derived from.
struct VictimSecrets {
  std::string source;
  std::optional<FieldElement> a;
  std::optional<FieldElement> b;
  std::optional<FieldElement> e;
  std::optional<FieldElement> user_nonce;   // N1
  std::optional<FieldElement> peer_nonces;  // N2 ^ N3
  std::optional<FieldElement> session_key;
};

struct RecordedMessage {
  std::string session;
  TranscriptEntry entry;
};

struct AdversaryKnowledge {
  std::vector<RecordedMessage> transcripts;
  std::optional<FieldElement> h_y;
  std::optional<FieldElement> h_yx;
  std::map<std::string, VictimSecrets> victims;
  // (K, M) pairs seen in baseline M2 messages, with their session label.
  std::vector<std::pair<std::string, std::pair<FieldElement, FieldElement>>> recorded_server_pairs;

  // First recorded message of `type` in `session`, if any.
  const TranscriptEntry* find(const std::string& session, const std::string& type) const;
};

/// Passive tap on a channel. Copies every delivered message into the
/// knowledge base under the current session label.
class Wiretap {
 public:
  Wiretap(SimChannel& channel, AdversaryKnowledge& knowledge);
  void label(std::string session) { *label_ = std::move(session); }

 private:
  std::shared_ptr<std::string> label_;
};

struct AttackOutcome {
  std::set<Party> accepted_by;
  std::optional<std::pair<Party, RejectReason>> rejected;
  std::optional<FieldElement> attacker_sk;
  // Public session handles of the honest parties involved.
  std::map<Party, SessionId> sessions;
};

// --- Baseline protocol attacks ---------------------------------------------

struct InsiderSecrets {
  FieldElement h_y;
  FieldElement h_yx;  // h(y || x)
};

/// A registered user reads h(y) off its own card and unmasks h(y || x) = E ^ B.
InsiderSecrets attack_internal_li(const SmartCardLi& own_card, const Identity& own_id,
                                  const Password& own_password);

/// Re-sends a recorded M1 to `server` and lets the honest server and control
/// server run to completion. The final message comes back to the attacker.
AttackOutcome attack_replay(PublicNetwork& network, const Identity& server,
                            ByteView recorded_m1);

/// Card for an identity nobody registered, with A = num1 and B = num2.
SmartCardLi attack_forge_card_li(const InsiderSecrets& insider, const Identity& forged_id,
                                 const FieldElement& num1, const FieldElement& num2);

/// Logs in to `server` with a forged card, bypassing the terminal check.
AttackOutcome use_forged_card_li(PublicNetwork& network, const SmartCardLi& card,
                                 const Identity& forged_id, const FieldElement& num1,
                                 const Identity& server, Rng& rng);

struct EavesdropResult {
  VictimSecrets derived;
  // The derived keys reproduce the V value observed on the wire, i.e. the
  // attacker can tell the recovered session key is the real one.
  bool consistent = false;
};

/// Recovers A, B, E, N1, N2 ^ N3 and SK of a recorded session from M1, M4
/// and the insider secrets.
EavesdropResult attack_eavesdrop_li(const li::M1& m1, const li::M4& m4,
                                    const InsiderSecrets& insider, const Identity& server);

/// Logs in as the victim to `server` with a fresh nonce.
AttackOutcome attack_masquerade_user_li(PublicNetwork& network, const VictimSecrets& stolen,
                                        const InsiderSecrets& insider, const Identity& server,
                                        Rng& rng);

/// Answers a victim's intercepted M1 in place of `impersonated`: attaches a
/// stale (K, M) to build M2, sends it to the control server, and forwards
/// the reply to the victim.
AttackOutcome attack_masquerade_server_li(PublicNetwork& network,
                                          const std::pair<FieldElement, FieldElement>& recorded_km,
                                          ByteView victim_m1, SessionId victim_session,
                                          const Identity& impersonated,
                                          const VictimSecrets& stolen,
                                          const InsiderSecrets& insider);

// --- Counterparts against the pseudonym protocol ---------------------------

/// Everything an insider can pull out of its own card with its password.
struct DpiInsider {
  Identity id;
  FieldElement a;
  FieldElement b;
  FieldElement pid;
  FieldElement salt;
};

DpiInsider attack_internal_dpi(const SmartCardDpi& own_card, const Identity& own_id,
                               const Password& own_password);

/// Builds an M1 under a victim's pseudonym using the insider's own B.
AttackOutcome impersonate_with_insider_dpi(PublicNetwork& network, const DpiInsider& insider,
                                           const FieldElement& victim_pid,
                                           const Identity& server, Rng& rng);

SmartCardDpi attack_forge_card_dpi(const Identity& forged_id, const FieldElement& salt,
                                   const FieldElement& num1, const FieldElement& num2);

AttackOutcome use_forged_card_dpi(PublicNetwork& network, const SmartCardDpi& card,
                                  const Identity& forged_id, const FieldElement& num1,
                                  const Identity& server, Rng& rng);

/// The baseline recovery pipeline with the insider's B standing in for the
/// victim's.
EavesdropResult attack_eavesdrop_dpi(const dpi::M1& m1, const dpi::M4& m4,
                                     const DpiInsider& insider);

/// Replays a recorded M1 with a fresh timestamp.
AttackOutcome attack_masquerade_user_dpi(PublicNetwork& network, const dpi::M1& recorded_m1,
                                         const Identity& server);

/// Splices the server part of a recorded M2 onto a fresh victim M1.
AttackOutcome attack_masquerade_server_dpi(PublicNetwork& network, const dpi::M2& recorded_m2,
                                           ByteView victim_m1, SessionId victim_session);

}  // namespace akalab::adversary
