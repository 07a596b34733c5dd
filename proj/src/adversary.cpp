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

#include "akalab/adversary.hpp"

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"

namespace akalab::adversary {
namespace {

struct ServerLeg {
  AttackOutcome outcome;
  std::optional<Bytes> m4;
};

// Pushes an attacker-built M1 through the honest server and control server.
// The server's final message is routed to the attacker.
ServerLeg drive_servers(PublicNetwork& network, const Identity& server, ByteView m1) {
  ServerLeg leg;
  auto m2 = network.deliver_m1(Party::Adversary, server, m1);
  if (!m2) {
    leg.outcome.rejected = std::pair{Party::Server, m2.reason()};
    return leg;
  }
  const SessionId server_session = m2.value().session;
  leg.outcome.sessions[Party::Server] = server_session;

  auto m3 = network.deliver_m2(Party::Server, m2.value().bytes);
  if (!m3) {
    leg.outcome.rejected = std::pair{Party::ControlServer, m3.reason()};
    return leg;
  }
  leg.outcome.accepted_by.insert(Party::ControlServer);
  leg.outcome.sessions[Party::ControlServer] = m3.value().session;

  auto m4 = network.deliver_m3(Party::ControlServer, server_session, m3.value().bytes);
  if (!m4) {
    leg.outcome.rejected = std::pair{Party::Server, m4.reason()};
    return leg;
  }
  leg.outcome.accepted_by.insert(Party::Server);
  network.channel().deliver(Party::Server, Party::Adversary, network.message_type(4),
                            m4.value().bytes);
  leg.m4 = m4.value().bytes;
  return leg;
}

// Sends a forged M2 to the control server and relays its answer to the
// victim's open session.
AttackOutcome drive_cs_and_user(PublicNetwork& network, const Bytes& m2,
                                SessionId victim_session,
                                const std::function<Bytes(const Bytes&)>& make_m4) {
  AttackOutcome outcome;
  outcome.sessions[Party::User] = victim_session;
  auto m3 = network.deliver_m2(Party::Adversary, m2);
  if (!m3) {
    outcome.rejected = std::pair{Party::ControlServer, m3.reason()};
    return outcome;
  }
  outcome.accepted_by.insert(Party::ControlServer);
  outcome.sessions[Party::ControlServer] = m3.value().session;
  network.channel().deliver(Party::ControlServer, Party::Adversary, network.message_type(3),
                            m3.value().bytes);

  auto done = network.deliver_m4(Party::Adversary, victim_session, make_m4(m3.value().bytes));
  if (!done) {
    outcome.rejected = std::pair{Party::User, done.reason()};
    return outcome;
  }
  outcome.accepted_by.insert(Party::User);
  return outcome;
}

}  // namespace

const TranscriptEntry* AdversaryKnowledge::find(const std::string& session,
                                                const std::string& type) const {
  for (const auto& rec : transcripts) {
    if (rec.session == session && rec.entry.type == type) return &rec.entry;
  }
  return nullptr;
}

Wiretap::Wiretap(SimChannel& channel, AdversaryKnowledge& knowledge)
    : label_(std::make_shared<std::string>()) {
  channel.add_tap([label = label_, &knowledge](const TranscriptEntry& entry) {
    knowledge.transcripts.push_back({*label, entry});
    if (entry.type == "li.m2") {
      try {
        const li::M2 m2 = li::decode_m2(entry.bytes);
        knowledge.recorded_server_pairs.push_back({*label, {m2.k, m2.m}});
      } catch (const FormatError&) {
      }
    }
  });
}

// --- Baseline protocol -------------------------------------------------------

InsiderSecrets attack_internal_li(const SmartCardLi& own_card, const Identity& own_id,
                                  const Password& own_password) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  const FieldElement a = hash_of(own_card.b, own_password);
  const FieldElement b = own_card.d ^ hash_of(own_id, a);
  return InsiderSecrets{own_card.h_y, own_card.e ^ b};
}

AttackOutcome attack_replay(PublicNetwork& network, const Identity& server,
                            ByteView recorded_m1) {
  return drive_servers(network, server, recorded_m1).outcome;
}

SmartCardLi attack_forge_card_li(const InsiderSecrets& insider, const Identity& forged_id,
                                 const FieldElement& num1, const FieldElement& num2) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  SmartCardLi card;
  card.c = hash_of(forged_id, insider.h_y, num1);
  card.d = num2 ^ hash_of(forged_id, num1);
  card.e = num2 ^ insider.h_yx;
  card.h_y = insider.h_y;
  card.b = FieldElement::zero();
  return card;
}

AttackOutcome use_forged_card_li(PublicNetwork& network, const SmartCardLi& card,
                                 const Identity& forged_id, const FieldElement& num1,
                                 const Identity& server, Rng& rng) {
  FieldElement a = num1, b, n1;
  li::M1 m1;
  {
    MeterScope scope(Role::Adversary, Phase::Attack);
    b = card.d ^ hash_of(forged_id, a);
    n1 = random_field(rng);
    m1.f = card.h_y ^ n1;
    m1.g = hash_of(b, a, n1);
    m1.p_ij = card.e ^ hash_of(card.h_y, n1, server);
    m1.cid = a ^ hash_of(b, m1.f, n1);
  }
  auto leg = drive_servers(network, server, li::encode(m1));
  if (!leg.m4) return leg.outcome;

  MeterScope scope(Role::Adversary, Phase::Attack);
  const li::M4 m4 = li::decode_m4(*leg.m4);
  const FieldElement n2_n3 = m4.t ^ hash_of(a, b, n1);
  const FieldElement h_ab = hash_of(a, b);
  if (hash_of(h_ab, hash_of(n1 ^ n2_n3)) == m4.v) {
    leg.outcome.attacker_sk = hash_of(h_ab, n1 ^ n2_n3);
  }
  return leg.outcome;
}

EavesdropResult attack_eavesdrop_li(const li::M1& m1, const li::M4& m4,
                                    const InsiderSecrets& insider, const Identity& server) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  EavesdropResult out;
  const FieldElement n1 = m1.f ^ insider.h_y;
  const FieldElement e = m1.p_ij ^ hash_of(insider.h_y, n1, server);
  const FieldElement b = e ^ insider.h_yx;
  const FieldElement a = m1.cid ^ hash_of(b, m1.f, n1);
  const FieldElement n2_n3 = m4.t ^ hash_of(a, b, n1);
  const FieldElement h_ab = hash_of(a, b);
  out.derived.a = a;
  out.derived.b = b;
  out.derived.e = e;
  out.derived.user_nonce = n1;
  out.derived.peer_nonces = n2_n3;
  out.derived.session_key = hash_of(h_ab, n1 ^ n2_n3);
  out.consistent = hash_of(h_ab, hash_of(n1 ^ n2_n3)) == m4.v;
  return out;
}

AttackOutcome attack_masquerade_user_li(PublicNetwork& network, const VictimSecrets& stolen,
                                        const InsiderSecrets& insider, const Identity& server,
                                        Rng& rng) {
  if (!stolen.a || !stolen.b || !stolen.e) throw StateError("victim secrets incomplete");
  const FieldElement a = *stolen.a, b = *stolen.b;
  FieldElement n_ma;
  li::M1 m1;
  {
    MeterScope scope(Role::Adversary, Phase::Attack);
    n_ma = random_field(rng);
    m1.f = insider.h_y ^ n_ma;
    m1.g = hash_of(b, a, n_ma);
    m1.p_ij = *stolen.e ^ hash_of(insider.h_y, n_ma, server);
    m1.cid = a ^ hash_of(b, m1.f, n_ma);
  }
  auto leg = drive_servers(network, server, li::encode(m1));
  if (!leg.m4) return leg.outcome;

  MeterScope scope(Role::Adversary, Phase::Attack);
  const li::M4 m4 = li::decode_m4(*leg.m4);
  const FieldElement n2_n3 = m4.t ^ hash_of(a, b, n_ma);
  leg.outcome.attacker_sk = hash_of(hash_of(a, b), n_ma ^ n2_n3);
  return leg.outcome;
}

AttackOutcome attack_masquerade_server_li(PublicNetwork& network,
                                          const std::pair<FieldElement, FieldElement>& recorded_km,
                                          ByteView victim_m1, SessionId victim_session,
                                          const Identity& impersonated,
                                          const VictimSecrets& stolen,
                                          const InsiderSecrets& insider) {
  if (!stolen.a || !stolen.b) throw StateError("victim secrets incomplete");
  const li::M1 m1 = li::decode_m1(victim_m1);
  const li::M2 m2{m1, impersonated, recorded_km.first, recorded_km.second};

  FieldElement t;
  auto outcome = drive_cs_and_user(network, li::encode(m2), victim_session,
                                   [&](const Bytes& m3_bytes) {
                                     const li::M3 m3 = li::decode_m3(m3_bytes);
                                     t = m3.t;
                                     return li::encode(li::M4{m3.v, m3.t});
                                   });
  if (!outcome.accepted_by.count(Party::ControlServer)) return outcome;

  MeterScope scope(Role::Adversary, Phase::Attack);
  const FieldElement n1 = m1.f ^ insider.h_y;
  const FieldElement n2_n3 = t ^ hash_of(*stolen.a, *stolen.b, n1);
  outcome.attacker_sk = hash_of(hash_of(*stolen.a, *stolen.b), n1 ^ n2_n3);
  return outcome;
}

// --- Pseudonym protocol --------------------------------------------------------

DpiInsider attack_internal_dpi(const SmartCardDpi& own_card, const Identity& own_id,
                               const Password& own_password) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  const FieldElement a = hash_of(own_card.b, own_password);
  const FieldElement pid = hash_of(own_id, own_card.b);
  const FieldElement b = own_card.d ^ hash_of(pid ^ a);
  return DpiInsider{own_id, a, b, pid, own_card.b};
}

AttackOutcome impersonate_with_insider_dpi(PublicNetwork& network, const DpiInsider& insider,
                                           const FieldElement& victim_pid,
                                           const Identity& server, Rng& rng) {
  dpi::M1 m1;
  {
    MeterScope scope(Role::Adversary, Phase::Attack);
    const Timestamp ts = network.clock().now(Party::Adversary);
    const FieldElement n1 = random_field(rng);
    m1.f = insider.b ^ n1;
    m1.p_ij = hash_of(insider.b ^ hash_of(n1, server, victim_pid, ts));
    m1.cid = insider.id.block() ^ hash_of(insider.b, n1, ts, Tag2Bit::k00);
    m1.g = insider.salt ^ hash_of(insider.b, n1, ts, Tag2Bit::k11);
    m1.pid = victim_pid;
    m1.ts = ts;
  }
  return drive_servers(network, server, dpi::encode(m1)).outcome;
}

SmartCardDpi attack_forge_card_dpi(const Identity& forged_id, const FieldElement& salt,
                                   const FieldElement& num1, const FieldElement& num2) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  const FieldElement pid = hash_of(forged_id, salt);
  SmartCardDpi card;
  card.c = hash_of(forged_id, num1);
  card.d = num2 ^ hash_of(pid ^ num1);
  card.b = salt;
  return card;
}

AttackOutcome use_forged_card_dpi(PublicNetwork& network, const SmartCardDpi& card,
                                  const Identity& forged_id, const FieldElement& num1,
                                  const Identity& server, Rng& rng) {
  DpiInsider forged{forged_id, num1, FieldElement::zero(), FieldElement::zero(), card.b};
  {
    MeterScope scope(Role::Adversary, Phase::Attack);
    forged.pid = hash_of(forged_id, card.b);
    forged.b = card.d ^ hash_of(forged.pid ^ num1);
  }
  return impersonate_with_insider_dpi(network, forged, forged.pid, server, rng);
}

EavesdropResult attack_eavesdrop_dpi(const dpi::M1& m1, const dpi::M4& m4,
                                     const DpiInsider& insider) {
  MeterScope scope(Role::Adversary, Phase::Attack);
  EavesdropResult out;
  const FieldElement n1 = m1.f ^ insider.b;
  const FieldElement id_block = m1.cid ^ hash_of(insider.b, n1, m1.ts, Tag2Bit::k00);
  const FieldElement n2_n3 = m4.r ^ hash_of(id_block, n1, insider.b);
  out.derived.b = insider.b;
  out.derived.user_nonce = n1;
  out.derived.peer_nonces = n2_n3;
  out.derived.session_key = hash_of(n1 ^ n2_n3, m1.ts);
  out.consistent = hash_of(n2_n3) == m4.v;
  return out;
}

AttackOutcome attack_masquerade_user_dpi(PublicNetwork& network, const dpi::M1& recorded_m1,
                                         const Identity& server) {
  dpi::M1 m1 = recorded_m1;
  m1.ts = network.clock().now(Party::Adversary);
  return drive_servers(network, server, dpi::encode(m1)).outcome;
}

AttackOutcome attack_masquerade_server_dpi(PublicNetwork& network, const dpi::M2& recorded_m2,
                                           ByteView victim_m1, SessionId victim_session) {
  dpi::M2 m2 = recorded_m2;
  m2.m1 = dpi::decode_m1(victim_m1);
  return drive_cs_and_user(network, dpi::encode(m2), victim_session,
                           [](const Bytes& m3_bytes) {
                             const dpi::M3 m3 = dpi::decode_m3(m3_bytes);
                             return dpi::encode(dpi::M4{m3.r, m3.v});
                           });
}

}  // namespace akalab::adversary
