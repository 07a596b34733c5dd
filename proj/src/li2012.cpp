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

#include "akalab/li2012.hpp"

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"
#include "akalab/wire.hpp"

namespace akalab::li {
namespace {

using wire::Tag;

void put_m1(wire::Writer& w, const M1& m) {
  w.put(Tag::F, m.f).put(Tag::G, m.g).put(Tag::Pij, m.p_ij).put(Tag::Cid, m.cid);
}

M1 read_m1(wire::Reader& r) {
  M1 m;
  m.f = r.field(Tag::F);
  m.g = r.field(Tag::G);
  m.p_ij = r.field(Tag::Pij);
  m.cid = r.field(Tag::Cid);
  return m;
}

}  // namespace

ServerCredential provision_server(const Identity& sid, const CsSecrets& secrets) {
  MeterScope scope(Role::Registrar, Phase::Registration);
  return ServerCredential{sid, hash_of(sid, secrets.y), hash_of(secrets.x, secrets.y)};
}

Step<M1, UserState> user_step1(const SmartCardLi& card, const LiLogin& login,
                               const Identity& sid, Rng& rng) {
  MeterScope scope(Role::User, Phase::Ake);
  UserState state;
  state.a = login.a;
  state.b = login.b;
  state.nonce = random_field(rng);

  M1 m;
  m.f = card.h_y ^ state.nonce;
  m.g = hash_of(state.b, state.a, state.nonce);
  m.p_ij = card.e ^ hash_of(card.h_y, state.nonce, sid);
  m.cid = state.a ^ hash_of(state.b, m.f, state.nonce);
  return {m, state};
}

Step<M2, ServerState> server_step2(const M1& m1, const ServerCredential& credential,
                                   Rng& rng) {
  MeterScope scope(Role::Server, Phase::Ake);
  ServerState state{credential, random_field(rng), std::nullopt, std::nullopt, false};
  M2 m{m1, credential.sid, credential.h_sid_y ^ state.nonce,
       hash_of(credential.h_x_y, state.nonce)};
  return {m, state};
}

Outcome<Step<M3, CsState>> cs_step3(const M2& m2, const CsSecrets& secrets, Rng& rng) {
  MeterScope scope(Role::ControlServer, Phase::Ake);
  const FieldElement server_nonce = m2.k ^ hash_of(m2.sid, secrets.y);
  if (hash_of(hash_of(secrets.x, secrets.y), server_nonce) != m2.m) {
    return Rejection{RejectReason::ServerAuth};
  }

  const M1& m1 = m2.m1;
  const FieldElement h_y = hash_of(secrets.y);
  const FieldElement user_nonce = m1.f ^ h_y;
  const FieldElement b =
      m1.p_ij ^ hash_of(h_y, user_nonce, m2.sid) ^ hash_of(secrets.y, secrets.x);
  const FieldElement a = m1.cid ^ hash_of(b, m1.f, user_nonce);
  if (hash_of(b, a, user_nonce) != m1.g) return Rejection{RejectReason::UserAuth};

  CsState state;
  state.a = a;
  state.b = b;
  state.user_nonce = user_nonce;
  state.server_nonce = server_nonce;
  state.nonce = random_field(rng);
  state.h_ab = hash_of(a, b);
  state.accepted = true;

  const FieldElement all_nonces = user_nonce ^ server_nonce ^ state.nonce;
  const FieldElement h_nonces = hash_of(all_nonces);
  M3 m;
  m.q = user_nonce ^ state.nonce ^ hash_of(m2.sid, server_nonce);
  m.r = state.h_ab ^ h_nonces;
  m.v = hash_of(state.h_ab, h_nonces);
  m.t = server_nonce ^ state.nonce ^ hash_of(a, b, user_nonce);
  return Step<M3, CsState>{m, state};
}

Outcome<Step<M4, ServerState>> server_step4(const M3& m3, ServerState state) {
  MeterScope scope(Role::Server, Phase::Ake);
  const FieldElement n1_n3 = m3.q ^ hash_of(state.credential.sid, state.nonce);
  const FieldElement h_nonces = hash_of(n1_n3 ^ state.nonce);
  const FieldElement h_ab = m3.r ^ h_nonces;
  if (hash_of(h_ab, h_nonces) != m3.v) return Rejection{RejectReason::CsAuth};
  state.peer_nonces = n1_n3;
  state.h_ab = h_ab;
  state.accepted = true;
  return Step<M4, ServerState>{M4{m3.v, m3.t}, std::move(state)};
}

Outcome<UserState> user_step5(const M4& m4, UserState state) {
  MeterScope scope(Role::User, Phase::Ake);
  const FieldElement n2_n3 = m4.t ^ hash_of(state.a, state.b, state.nonce);
  const FieldElement h_ab = hash_of(state.a, state.b);
  if (hash_of(h_ab, hash_of(state.nonce ^ n2_n3)) != m4.v) {
    return Rejection{RejectReason::PeerAuth};
  }
  state.h_ab = h_ab;
  state.peer_nonces = n2_n3;
  state.accepted = true;
  return state;
}

FieldElement session_key(const UserState& state) {
  if (!state.accepted) throw StateError("user has not accepted the session");
  MeterScope scope(Role::User, Phase::SessionKey);
  return hash_of(*state.h_ab, state.nonce ^ *state.peer_nonces);
}

FieldElement session_key(const ServerState& state) {
  if (!state.accepted) throw StateError("server has not accepted the session");
  MeterScope scope(Role::Server, Phase::SessionKey);
  return hash_of(*state.h_ab, state.nonce ^ *state.peer_nonces);
}

FieldElement session_key(const CsState& state) {
  if (!state.accepted) throw StateError("control server has not accepted the session");
  MeterScope scope(Role::ControlServer, Phase::SessionKey);
  return hash_of(state.h_ab, state.user_nonce ^ state.server_nonce ^ state.nonce);
}

Bytes encode(const M1& m) {
  wire::Writer w;
  put_m1(w, m);
  return w.take();
}

Bytes encode(const M2& m) {
  wire::Writer w;
  put_m1(w, m.m1);
  w.put(Tag::Sid, m.sid).put(Tag::K, m.k).put(Tag::M, m.m);
  return w.take();
}

Bytes encode(const M3& m) {
  wire::Writer w;
  w.put(Tag::Q, m.q).put(Tag::R, m.r).put(Tag::V, m.v).put(Tag::T, m.t);
  return w.take();
}

Bytes encode(const M4& m) {
  wire::Writer w;
  w.put(Tag::V, m.v).put(Tag::T, m.t);
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
  M1 m1 = read_m1(r);
  Identity sid = r.identity(Tag::Sid);
  M2 m{m1, sid, r.field(Tag::K), r.field(Tag::M)};
  r.finish();
  return m;
}

M3 decode_m3(ByteView data) {
  wire::Reader r(data);
  M3 m;
  m.q = r.field(Tag::Q);
  m.r = r.field(Tag::R);
  m.v = r.field(Tag::V);
  m.t = r.field(Tag::T);
  r.finish();
  return m;
}

M4 decode_m4(ByteView data) {
  wire::Reader r(data);
  M4 m;
  m.v = r.field(Tag::V);
  m.t = r.field(Tag::T);
  r.finish();
  return m;
}

}  // namespace akalab::li
