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

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>

#include "akalab/bytes.hpp"
#include "akalab/cs_secrets.hpp"
#include "akalab/outcome.hpp"
#include "akalab/rng.hpp"
#include "akalab/smartcard.hpp"

// Dynamic pseudonym identity protocol: users and servers appear on the wire
// only as PID = h(ID || b) and PSID = h(SID || d); messages carry a
// timestamp checked against a freshness window.
namespace akalab::dpi {

using Millis = std::chrono::milliseconds;

inline constexpr Millis kDefaultFreshnessWindow{5000};

/// User -> server.
struct M1 {
  FieldElement f;     // B ^ N1
  FieldElement p_ij;  // h(B ^ h(N1 || SID || PID || TS))
  FieldElement cid;   // ID ^ h(B || N1 || TS || 00)
  FieldElement g;     // b ^ h(B || N1 || TS || 11)
  FieldElement pid;
  Timestamp ts;

  friend bool operator==(const M1&, const M1&) = default;
};

/// Server -> control server: M1 verbatim plus the server's contribution.
struct M2 {
  M1 m1;
  FieldElement j;  // BS ^ N2
  FieldElement k;  // h(N2 || BS || P_ij || TS)
  FieldElement l;  // SID ^ h(BS || N2 || TS || 00)
  FieldElement m;  // d ^ h(BS || N2 || TS || 11)
  FieldElement psid;

  friend bool operator==(const M2&, const M2&) = default;
};

/// Control server -> server.
struct M3 {
  FieldElement p;  // N1 ^ N3 ^ h(SID || N2 || BS)
  FieldElement q;  // h(N1 ^ N3)
  FieldElement r;  // N2 ^ N3 ^ h(ID || N1 || B)
  FieldElement v;  // h(N2 ^ N3)

  friend bool operator==(const M3&, const M3&) = default;
};

/// Server -> user: {R, V} from M3.
struct M4 {
  FieldElement r;
  FieldElement v;

  friend bool operator==(const M4&, const M4&) = default;
};

struct UserRecord {
  Identity id;
  FieldElement salt;  // b
  FieldElement a;     // h(b || P)

  friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

struct ServerRecord {
  Identity sid;
  FieldElement salt;  // d

  friend bool operator==(const ServerRecord&, const ServerRecord&) = default;
};

/// The control server's verification table. Consulted at registration and
/// update time only; every accessor that reads the tables is counted so
/// tests can assert the AKE never touches them.
class CsRegistry {
 public:
  explicit CsRegistry(CsSecrets secrets) : secrets_(secrets) {}

  const CsSecrets& secrets() const { return secrets_; }

  const UserRecord* find_user(const FieldElement& pid) const;
  const ServerRecord* find_server(const FieldElement& psid) const;
  const std::map<FieldElement, UserRecord>& users() const;
  const std::map<FieldElement, ServerRecord>& servers() const;

  // Throw RegistrationError on a duplicate or missing key.
  void insert_user(const FieldElement& pid, UserRecord record);
  void insert_server(const FieldElement& psid, ServerRecord record);
  void erase_user(const FieldElement& pid);
  void erase_server(const FieldElement& psid);
  void replace_password_digest(const FieldElement& pid, const FieldElement& a);

  std::size_t lookups() const { return lookups_; }

  friend bool operator==(const CsRegistry& lhs, const CsRegistry& rhs) {
    return lhs.secrets_ == rhs.secrets_ && lhs.users_ == rhs.users_ &&
           lhs.servers_ == rhs.servers_;
  }

 private:
  CsSecrets secrets_;
  std::map<FieldElement, UserRecord> users_;
  std::map<FieldElement, ServerRecord> servers_;
  mutable std::size_t lookups_ = 0;
};

/// What a server keeps: its identity, its salt d, and BS = h(PSID || y).
struct ServerCredential {
  Identity sid;
  FieldElement salt;  // d
  FieldElement psid;
  FieldElement bs;

  friend bool operator==(const ServerCredential&, const ServerCredential&) = default;
};

struct UserState {
  Identity id;
  FieldElement b;
  FieldElement nonce;  // N1
  Timestamp ts;
  std::optional<FieldElement> peer_nonces;  // N2 ^ N3
  bool accepted = false;
};

struct ServerState {
  ServerCredential credential;
  FieldElement nonce;  // N2
  Timestamp ts;
  std::optional<FieldElement> peer_nonces;  // N1 ^ N3
  bool accepted = false;
};

struct CsState {
  Identity id;
  Identity sid;
  FieldElement user_nonce;    // N1
  FieldElement server_nonce;  // N2
  FieldElement nonce;         // N3
  Timestamp ts;
  bool accepted = false;
};

FieldElement pseudonym(const Identity& id, const FieldElement& salt);

// Returns B = h(PID || x) for the caller to personalize its card. Throws
// RegistrationError if the pseudonym is already registered.
FieldElement register_user(CsRegistry& registry, const Identity& id,
                           const FieldElement& salt, const FieldElement& a);

ServerCredential register_server(CsRegistry& registry, const Identity& sid,
                                 const FieldElement& salt);

// Rebuilds the credential the control server issued to `sid`, or nothing if
// `sid` is not registered.
std::optional<ServerCredential> server_credential(const CsRegistry& registry,
                                                  const Identity& sid);

bool is_stale(Timestamp ts, Timestamp now, Millis window);

Step<M1, UserState> user_step1(const DpiLogin& login, const Identity& id,
                               const Identity& sid, Timestamp now, Rng& rng);

// Rejects Timeout when now - TS exceeds the window.
Outcome<Step<M2, ServerState>> server_step2(const M1& m1,
                                            const ServerCredential& credential,
                                            Millis window, Timestamp now, Rng& rng);

// Uses only the registry's secrets. Rejects Timeout, ServerAuth (K),
// UserAuth (P_ij) or IdentityBinding (PID/PSID recomputation).
Outcome<Step<M3, CsState>> cs_step3(const M2& m2, const CsRegistry& registry,
                                    Millis window, Timestamp now, Rng& rng);

// Rejects CsAuth on a Q mismatch.
Outcome<Step<M4, ServerState>> server_step4(const M3& m3, ServerState state);

// Rejects PeerAuth on a V mismatch.
Outcome<UserState> user_step5(const M4& m4, UserState state);

// SK = h((N1 ^ N2 ^ N3) || TS). Throws StateError before accept.
FieldElement session_key(const UserState& state);
FieldElement session_key(const ServerState& state);
FieldElement session_key(const CsState& state);

// Both reject Login when the current password does not open the card.
Outcome<SmartCardDpi> password_update(const SmartCardDpi& card, const Identity& id,
                                      const Password& old_password,
                                      const Password& new_password,
                                      CsRegistry& registry);
Outcome<SmartCardDpi> pid_update(const SmartCardDpi& card, const Identity& id,
                                 const Password& password, const FieldElement& new_salt,
                                 CsRegistry& registry);

ServerCredential psid_update(const ServerCredential& credential,
                             const FieldElement& new_salt, CsRegistry& registry);

Bytes encode(const M1& m);
Bytes encode(const M2& m);
Bytes encode(const M3& m);
Bytes encode(const M4& m);
M1 decode_m1(ByteView data);
M2 decode_m2(ByteView data);
M3 decode_m3(ByteView data);
M4 decode_m4(ByteView data);

}  // namespace akalab::dpi
