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

#include "akalab/dpi.hpp"

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"
#include "akalab/wire.hpp"

namespace akalab::dpi {
namespace {

using wire::Tag;

void put_m1(wire::Writer& w, const M1& m) {
  w.put(Tag::F, m.f)
      .put(Tag::Pij, m.p_ij)
      .put(Tag::Cid, m.cid)
      .put(Tag::G, m.g)
      .put(Tag::Pid, m.pid)
      .put(Tag::Ts, m.ts);
}

M1 read_m1(wire::Reader& r) {
  M1 m;
  m.f = r.field(Tag::F);
  m.p_ij = r.field(Tag::Pij);
  m.cid = r.field(Tag::Cid);
  m.g = r.field(Tag::G);
  m.pid = r.field(Tag::Pid);
  m.ts = r.timestamp(Tag::Ts);
  return m;
}

FieldElement user_proof(const FieldElement& b, const FieldElement& n1,
                        const Identity& sid, const FieldElement& pid, Timestamp ts) {
  return hash_of(b ^ hash_of(n1, sid, pid, ts));
}

// Unmasked identities may be arbitrary bytes after tampering.
std::optional<Identity> try_identity(const FieldElement& block) {
  try {
    return Identity::from_block(block);
  } catch (const EncodingError&) {
    return std::nullopt;
  }
}

}  // namespace

const UserRecord* CsRegistry::find_user(const FieldElement& pid) const {
  ++lookups_;
  auto it = users_.find(pid);
  return it == users_.end() ? nullptr : &it->second;
}

const ServerRecord* CsRegistry::find_server(const FieldElement& psid) const {
  ++lookups_;
  auto it = servers_.find(psid);
  return it == servers_.end() ? nullptr : &it->second;
}

const std::map<FieldElement, UserRecord>& CsRegistry::users() const {
  ++lookups_;
  return users_;
}

const std::map<FieldElement, ServerRecord>& CsRegistry::servers() const {
  ++lookups_;
  return servers_;
}

void CsRegistry::insert_user(const FieldElement& pid, UserRecord record) {
  if (!users_.emplace(pid, std::move(record)).second) {
    throw RegistrationError("duplicate user pseudonym " + pid.hex());
  }
}

void CsRegistry::insert_server(const FieldElement& psid, ServerRecord record) {
  if (!servers_.emplace(psid, std::move(record)).second) {
    throw RegistrationError("duplicate server pseudonym " + psid.hex());
  }
}

void CsRegistry::erase_user(const FieldElement& pid) {
  if (users_.erase(pid) == 0) throw RegistrationError("unknown user pseudonym " + pid.hex());
}

void CsRegistry::erase_server(const FieldElement& psid) {
  if (servers_.erase(psid) == 0) {
    throw RegistrationError("unknown server pseudonym " + psid.hex());
  }
}

void CsRegistry::replace_password_digest(const FieldElement& pid, const FieldElement& a) {
  auto it = users_.find(pid);
  if (it == users_.end()) throw RegistrationError("unknown user pseudonym " + pid.hex());
  it->second.a = a;
}

FieldElement pseudonym(const Identity& id, const FieldElement& salt) {
  return hash_of(id, salt);
}

FieldElement register_user(CsRegistry& registry, const Identity& id,
                           const FieldElement& salt, const FieldElement& a) {
  MeterScope scope(Role::Registrar, Phase::Registration);
  const FieldElement pid = pseudonym(id, salt);
  registry.insert_user(pid, UserRecord{id, salt, a});
  return hash_of(pid, registry.secrets().x);
}

ServerCredential register_server(CsRegistry& registry, const Identity& sid,
                                 const FieldElement& salt) {
  MeterScope scope(Role::Registrar, Phase::Registration);
  const FieldElement psid = pseudonym(sid, salt);
  registry.insert_server(psid, ServerRecord{sid, salt});
  return ServerCredential{sid, salt, psid, hash_of(psid, registry.secrets().y)};
}

std::optional<ServerCredential> server_credential(const CsRegistry& registry,
                                                  const Identity& sid) {
  for (const auto& [psid, record] : registry.servers()) {
    if (record.sid == sid) {
      MeterScope scope(Role::Registrar, Phase::Registration);
      return ServerCredential{sid, record.salt, psid, hash_of(psid, registry.secrets().y)};
    }
  }
  return std::nullopt;
}

bool is_stale(Timestamp ts, Timestamp now, Millis window) {
  if (now.millis <= ts.millis) return false;
  return now.millis - ts.millis > static_cast<std::uint64_t>(window.count());
}

Step<M1, UserState> user_step1(const DpiLogin& login, const Identity& id,
                               const Identity& sid, Timestamp now, Rng& rng) {
  MeterScope scope(Role::User, Phase::Ake);
  UserState state{id, login.b, random_field(rng), now, std::nullopt, false};
  M1 m;
  m.f = login.b ^ state.nonce;
  m.p_ij = user_proof(login.b, state.nonce, sid, login.pid, now);
  m.cid = id.block() ^ hash_of(login.b, state.nonce, now, Tag2Bit::k00);
  m.g = login.salt ^ hash_of(login.b, state.nonce, now, Tag2Bit::k11);
  m.pid = login.pid;
  m.ts = now;
  return {m, std::move(state)};
}

Outcome<Step<M2, ServerState>> server_step2(const M1& m1,
                                            const ServerCredential& credential,
                                            Millis window, Timestamp now, Rng& rng) {
  MeterScope scope(Role::Server, Phase::Ake);
  if (is_stale(m1.ts, now, window)) return Rejection{RejectReason::Timeout};
  ServerState state{credential, random_field(rng), m1.ts, std::nullopt, false};
  const FieldElement& bs = credential.bs;
  M2 m;
  m.m1 = m1;
  m.j = bs ^ state.nonce;
  m.k = hash_of(state.nonce, bs, m1.p_ij, m1.ts);
  m.l = credential.sid.block() ^ hash_of(bs, state.nonce, m1.ts, Tag2Bit::k00);
  m.m = credential.salt ^ hash_of(bs, state.nonce, m1.ts, Tag2Bit::k11);
  m.psid = credential.psid;
  return Step<M2, ServerState>{m, std::move(state)};
}

Outcome<Step<M3, CsState>> cs_step3(const M2& m2, const CsRegistry& registry,
                                    Millis window, Timestamp now, Rng& rng) {
  MeterScope scope(Role::ControlServer, Phase::Ake);
  const M1& m1 = m2.m1;
  const CsSecrets& secrets = registry.secrets();
  if (is_stale(m1.ts, now, window)) return Rejection{RejectReason::Timeout};

  const FieldElement bs = hash_of(m2.psid, secrets.y);
  const FieldElement server_nonce = m2.j ^ bs;
  if (hash_of(server_nonce, bs, m1.p_ij, m1.ts) != m2.k) {
    return Rejection{RejectReason::ServerAuth};
  }

  const FieldElement b = hash_of(m1.pid, secrets.x);
  const FieldElement user_nonce = m1.f ^ b;
  const FieldElement id_block = m1.cid ^ hash_of(b, user_nonce, m1.ts, Tag2Bit::k00);
  const FieldElement sid_block = m2.l ^ hash_of(bs, server_nonce, m1.ts, Tag2Bit::k00);
  const auto sid = try_identity(sid_block);
  if (!sid || user_proof(b, user_nonce, *sid, m1.pid, m1.ts) != m1.p_ij) {
    return Rejection{RejectReason::UserAuth};
  }

  {
    // Identity binding: the traceability hashes.
    PhaseScope optional(Phase::AkeOptional);
    const FieldElement user_salt = m1.g ^ hash_of(b, user_nonce, m1.ts, Tag2Bit::k11);
    const FieldElement server_salt = m2.m ^ hash_of(bs, server_nonce, m1.ts, Tag2Bit::k11);
    const FieldElement pid = hash_of(id_block, user_salt);
    const FieldElement psid = hash_of(sid_block, server_salt);
    if (pid != m1.pid || psid != m2.psid) return Rejection{RejectReason::IdentityBinding};
  }
  // The binding check guarantees id_block hashes to the pseudonym, but it can
  // still fail to decode if the registered identity was itself malformed.
  const auto id = try_identity(id_block);
  if (!id) return Rejection{RejectReason::IdentityBinding};

  CsState state{*id, *sid, user_nonce, server_nonce, random_field(rng), m1.ts, true};
  const FieldElement n1_n3 = user_nonce ^ state.nonce;
  const FieldElement n2_n3 = server_nonce ^ state.nonce;
  M3 m;
  m.p = n1_n3 ^ hash_of(*sid, server_nonce, bs);
  m.q = hash_of(n1_n3);
  m.r = n2_n3 ^ hash_of(*id, user_nonce, b);
  m.v = hash_of(n2_n3);
  return Step<M3, CsState>{m, std::move(state)};
}

Outcome<Step<M4, ServerState>> server_step4(const M3& m3, ServerState state) {
  MeterScope scope(Role::Server, Phase::Ake);
  const FieldElement n1_n3 =
      m3.p ^ hash_of(state.credential.sid, state.nonce, state.credential.bs);
  if (hash_of(n1_n3) != m3.q) return Rejection{RejectReason::CsAuth};
  state.peer_nonces = n1_n3;
  state.accepted = true;
  return Step<M4, ServerState>{M4{m3.r, m3.v}, std::move(state)};
}

Outcome<UserState> user_step5(const M4& m4, UserState state) {
  MeterScope scope(Role::User, Phase::Ake);
  const FieldElement n2_n3 = m4.r ^ hash_of(state.id, state.nonce, state.b);
  if (hash_of(n2_n3) != m4.v) return Rejection{RejectReason::PeerAuth};
  state.peer_nonces = n2_n3;
  state.accepted = true;
  return state;
}

FieldElement session_key(const UserState& state) {
  if (!state.accepted) throw StateError("user has not accepted the session");
  MeterScope scope(Role::User, Phase::SessionKey);
  return hash_of(state.nonce ^ *state.peer_nonces, state.ts);
}

FieldElement session_key(const ServerState& state) {
  if (!state.accepted) throw StateError("server has not accepted the session");
  MeterScope scope(Role::Server, Phase::SessionKey);
  return hash_of(state.nonce ^ *state.peer_nonces, state.ts);
}

FieldElement session_key(const CsState& state) {
  if (!state.accepted) throw StateError("control server has not accepted the session");
  MeterScope scope(Role::ControlServer, Phase::SessionKey);
  return hash_of(state.user_nonce ^ state.server_nonce ^ state.nonce, state.ts);
}

Outcome<SmartCardDpi> password_update(const SmartCardDpi& card, const Identity& id,
                                      const Password& old_password,
                                      const Password& new_password,
                                      CsRegistry& registry) {
  auto login = local_login_dpi(card, id, old_password);
  if (!login) return Rejection{login.reason()};
  MeterScope scope(Role::User, Phase::Registration);
  const FieldElement a = hash_of(card.b, new_password);
  registry.replace_password_digest(login.value().pid, a);
  SmartCardDpi updated;
  updated.c = hash_of(id, a);
  updated.d = login.value().b ^ hash_of(login.value().pid ^ a);
  updated.b = card.b;
  return updated;
}

Outcome<SmartCardDpi> pid_update(const SmartCardDpi& card, const Identity& id,
                                 const Password& password, const FieldElement& new_salt,
                                 CsRegistry& registry) {
  auto login = local_login_dpi(card, id, password);
  if (!login) return Rejection{login.reason()};
  const FieldElement old_pid = login.value().pid;
  if (registry.find_user(old_pid) == nullptr) {
    throw RegistrationError("user pseudonym not registered: " + old_pid.hex());
  }
  FieldElement a;
  {
    MeterScope scope(Role::User, Phase::Registration);
    a = hash_of(new_salt, password);
  }
  const FieldElement b = register_user(registry, id, new_salt, a);
  registry.erase_user(old_pid);
  return personalize_card_dpi(id, password, new_salt, b);
}

ServerCredential psid_update(const ServerCredential& credential,
                             const FieldElement& new_salt, CsRegistry& registry) {
  if (registry.find_server(credential.psid) == nullptr) {
    throw RegistrationError("server pseudonym not registered: " + credential.psid.hex());
  }
  ServerCredential updated = register_server(registry, credential.sid, new_salt);
  registry.erase_server(credential.psid);
  return updated;
}

Bytes encode(const M1& m) {
  wire::Writer w;
  put_m1(w, m);
  return w.take();
}

Bytes encode(const M2& m) {
  wire::Writer w;
  put_m1(w, m.m1);
  w.put(Tag::J, m.j).put(Tag::K, m.k).put(Tag::L, m.l).put(Tag::M, m.m).put(Tag::Psid, m.psid);
  return w.take();
}

Bytes encode(const M3& m) {
  wire::Writer w;
  w.put(Tag::P, m.p).put(Tag::Q, m.q).put(Tag::R, m.r).put(Tag::V, m.v);
  return w.take();
}

Bytes encode(const M4& m) {
  wire::Writer w;
  w.put(Tag::R, m.r).put(Tag::V, m.v);
  return w.take();
}

M1 decode_m1(ByteView data) {
  wire::Reader r(data);
  M1 m = read_m1(r);
  r.finish();
  return m;
}

M2 decode_m2(ByteView data) {
  wire::Reader r(data);
  M2 m;
  m.m1 = read_m1(r);
  m.j = r.field(Tag::J);
  m.k = r.field(Tag::K);
  m.l = r.field(Tag::L);
  m.m = r.field(Tag::M);
  m.psid = r.field(Tag::Psid);
  r.finish();
  return m;
}

M3 decode_m3(ByteView data) {
  wire::Reader r(data);
  M3 m;
  m.p = r.field(Tag::P);
  m.q = r.field(Tag::Q);
  m.r = r.field(Tag::R);
  m.v = r.field(Tag::V);
  r.finish();
  return m;
}

M4 decode_m4(ByteView data) {
  wire::Reader r(data);
  M4 m;
  m.r = r.field(Tag::R);
  m.v = r.field(Tag::V);
  r.finish();
  return m;
}

}  // namespace akalab::dpi
