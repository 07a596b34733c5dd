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

#include "akalab/bytes.hpp"
#include "akalab/cs_secrets.hpp"
#include "akalab/outcome.hpp"
#include "akalab/rng.hpp"
#include "akalab/smartcard.hpp"

// Baseline multi-server protocol with dynamic identities.
// Implemented faithfully, weaknesses included; the adversary module attacks
// exactly these functions.
namespace akalab::li {

/// User -> server.
struct M1 {
  FieldElement f;    // h(y) ^ N1
  FieldElement g;    // h(B || A || N1)
  FieldElement p_ij; // E ^ h(h(y) || N1 || SID)
  FieldElement cid;  // A ^ h(B || F || N1)

  friend bool operator==(const M1&, const M1&) = default;
};

/// Server -> control server: M1 verbatim plus the server's contribution.
struct M2 {
  M1 m1;
  Identity sid;
  FieldElement k;  // h(SID || y) ^ N2
  FieldElement m;  // h(h(x || y) || N2)

  friend bool operator==(const M2&, const M2&) = default;
};

/// Control server -> server.
struct M3 {
  FieldElement q;  // N1 ^ N3 ^ h(SID || N2)
  FieldElement r;  // h(A || B) ^ h(N1 ^ N2 ^ N3)
  FieldElement v;  // h(h(A || B) || h(N1 ^ N2 ^ N3))
  FieldElement t;  // N2 ^ N3 ^ h(A || B || N1)

  friend bool operator==(const M3&, const M3&) = default;
};

/// Server -> user: {V, T} from M3.
struct M4 {
  FieldElement v;
  FieldElement t;

  friend bool operator==(const M4&, const M4&) = default;
};

/// What a server obtains from the control server over the secure channel.
struct ServerCredential {
  Identity sid;
  FieldElement h_sid_y;  // h(SID || y)
  FieldElement h_x_y;    // h(x || y)
};

struct UserState {
  FieldElement a;
  FieldElement b;
  FieldElement nonce;  // N1
  std::optional<FieldElement> h_ab;
  std::optional<FieldElement> peer_nonces;  // N2 ^ N3
  bool accepted = false;
};

struct ServerState {
  ServerCredential credential;
  FieldElement nonce;  // N2
  std::optional<FieldElement> h_ab;
  std::optional<FieldElement> peer_nonces;  // N1 ^ N3
  bool accepted = false;
};

struct CsState {
  FieldElement a;
  FieldElement b;
  FieldElement user_nonce;    // N1
  FieldElement server_nonce;  // N2
  FieldElement nonce;         // N3
  FieldElement h_ab;
  bool accepted = false;
};

ServerCredential provision_server(const Identity& sid, const CsSecrets& secrets);

Step<M1, UserState> user_step1(const SmartCardLi& card, const LiLogin& login,
                               const Identity& sid, Rng& rng);

// The server verifies nothing here.
Step<M2, ServerState> server_step2(const M1& m1, const ServerCredential& credential,
                                   Rng& rng);

// Rejects ServerAuth on an M mismatch, UserAuth on a G mismatch.
Outcome<Step<M3, CsState>> cs_step3(const M2& m2, const CsSecrets& secrets, Rng& rng);

// Rejects CsAuth on a V mismatch.
Outcome<Step<M4, ServerState>> server_step4(const M3& m3, ServerState state);

// Rejects PeerAuth on a V mismatch.
Outcome<UserState> user_step5(const M4& m4, UserState state);

// SK = h(h(A || B) || (N1 ^ N2 ^ N3)). Throws StateError before accept.
FieldElement session_key(const UserState& state);
FieldElement session_key(const ServerState& state);
FieldElement session_key(const CsState& state);

Bytes encode(const M1& m);
Bytes encode(const M2& m);
Bytes encode(const M3& m);
Bytes encode(const M4& m);
M1 decode_m1(ByteView data);
M2 decode_m2(ByteView data);
M3 decode_m3(ByteView data);
M4 decode_m4(ByteView data);

}  // namespace akalab::li
