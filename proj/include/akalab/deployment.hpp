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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "akalab/dpi.hpp"
#include "akalab/li2012.hpp"
#include "akalab/meter.hpp"
#include "akalab/outcome.hpp"
#include "akalab/rng.hpp"
#include "akalab/sim.hpp"
#include "akalab/smartcard.hpp"

namespace akalab {

using SessionId = std::uint64_t;

/// A message a party has put on the wire, tagged with the sender's local
/// session so a later reply can be routed back.
struct Emitted {
  SessionId session = 0;
  Bytes bytes;
};

struct Accepted {};

/// Everything reachable from the public network: honest parties that react
/// to wire bytes. Adversary code only ever sees this interface; party
/// secrets and ground-truth keys live on the concrete deployments.
///
/// Every `deliver_*` call records the message (sender -> receiver) in the
/// channel transcript before the receiver processes it.
class PublicNetwork {
 public:
  virtual ~PublicNetwork() = default;

  virtual Protocol protocol() const = 0;
  virtual SimClock& clock() = 0;
  virtual SimChannel& channel() = 0;

  // Registered user `user` starts a login towards `server`; the returned M1
  // has not been delivered yet. Rejects Login on a bad password.
  virtual Outcome<Emitted> user_begin(const std::string& user, const Identity& server) = 0;

  virtual Outcome<Emitted> deliver_m1(Party from, const Identity& server, ByteView m1) = 0;
  virtual Outcome<Emitted> deliver_m2(Party from, ByteView m2) = 0;
  virtual Outcome<Emitted> deliver_m3(Party from, SessionId server_session, ByteView m3) = 0;
  virtual Outcome<Accepted> deliver_m4(Party from, SessionId user_session, ByteView m4) = 0;

  std::string message_type(int index) const;
};

struct DeploymentConfig {
  std::uint64_t seed = 0;
  Timestamp start{1'700'000'000'000};
  Millis server_window = dpi::kDefaultFreshnessWindow;
  Millis cs_window = dpi::kDefaultFreshnessWindow;
};

/// Common machinery for a simulated deployment: clock, channel, meter,
/// per-party random streams, and ground-truth session keys.
class Deployment : public PublicNetwork {
 public:
  explicit Deployment(const DeploymentConfig& config);

  SimClock& clock() override { return clock_; }
  SimChannel& channel() override { return channel_; }
  HashMeter& meter() { return meter_; }
  const DeploymentConfig& config() const { return config_; }

  // Ground truth; never exposed through PublicNetwork.
  std::optional<FieldElement> session_key(Party party, SessionId session) const;

 protected:
  Rng& rng(Party party);
  SessionId next_session() { return next_session_++; }
  void record_key(Party party, SessionId session, const FieldElement& key) {
    keys_[{party, session}] = key;
  }

  DeploymentConfig config_;
  SimClock clock_;
  SimChannel channel_;
  HashMeter meter_;
  Rng registrar_rng_;

 private:
  std::map<Party, Rng> rngs_;
  std::map<std::pair<Party, SessionId>, FieldElement> keys_;
  SessionId next_session_ = 1;
};

class LiDeployment final : public Deployment {
 public:
  LiDeployment(const DeploymentConfig& config, const CsSecrets& secrets);

  Protocol protocol() const override { return Protocol::Li; }

  const SmartCardLi& register_user(const Identity& id, const Password& password);
  void add_user(const Identity& id, const Password& password, const SmartCardLi& card);
  void register_server(const Identity& sid);

  const CsSecrets& secrets() const { return secrets_; }
  const SmartCardLi& card(const std::string& user) const;

  Outcome<Emitted> user_begin(const std::string& user, const Identity& server) override;
  Outcome<Emitted> deliver_m1(Party from, const Identity& server, ByteView m1) override;
  Outcome<Emitted> deliver_m2(Party from, ByteView m2) override;
  Outcome<Emitted> deliver_m3(Party from, SessionId server_session, ByteView m3) override;
  Outcome<Accepted> deliver_m4(Party from, SessionId user_session, ByteView m4) override;

 private:
  struct User {
    Identity id;
    Password password;
    SmartCardLi card;
  };

  CsSecrets secrets_;
  std::map<std::string, User> users_;
  std::map<std::string, li::ServerCredential> servers_;
  std::map<SessionId, li::UserState> user_sessions_;
  std::map<SessionId, li::ServerState> server_sessions_;
};

class DpiDeployment final : public Deployment {
 public:
  DpiDeployment(const DeploymentConfig& config, dpi::CsRegistry registry);

  Protocol protocol() const override { return Protocol::Dpi; }

  const SmartCardDpi& register_user(const Identity& id, const Password& password);
  void add_user(const Identity& id, const Password& password, const SmartCardDpi& card);
  const dpi::ServerCredential& register_server(const Identity& sid);
  void add_server(const dpi::ServerCredential& credential);

  Outcome<Accepted> update_password(const std::string& user, const Password& new_password);
  Outcome<Accepted> rotate_pseudonym(const std::string& user);
  const dpi::ServerCredential& rotate_server_pseudonym(const std::string& server);

  const dpi::CsRegistry& registry() const { return registry_; }
  const SmartCardDpi& card(const std::string& user) const;
  const dpi::ServerCredential& server(const std::string& sid) const;

  Outcome<Emitted> user_begin(const std::string& user, const Identity& server) override;
  Outcome<Emitted> deliver_m1(Party from, const Identity& server, ByteView m1) override;
  Outcome<Emitted> deliver_m2(Party from, ByteView m2) override;
  Outcome<Emitted> deliver_m3(Party from, SessionId server_session, ByteView m3) override;
  Outcome<Accepted> deliver_m4(Party from, SessionId user_session, ByteView m4) override;

 private:
  struct User {
    Identity id;
    Password password;
    SmartCardDpi card;
  };

  User& user(const std::string& name);

  dpi::CsRegistry registry_;
  std::map<std::string, User> users_;
  std::map<std::string, dpi::ServerCredential> servers_;
  std::map<SessionId, dpi::UserState> user_sessions_;
  std::map<SessionId, dpi::ServerState> server_sessions_;
};

// --- Session runner -------------------------------------------------------

struct Intervention {
  enum class Kind { Drop, Delay, Inject, Reroute };

  Kind kind = Kind::Drop;
  int message = 1;  // 1..4 in flow order U->S, S->CS, CS->S, S->U
  Millis delay{0};
  Bytes payload;

  static Intervention drop(int message) { return {Kind::Drop, message, Millis{0}, {}}; }
  static Intervention delay_by(int message, Millis by) { return {Kind::Delay, message, by, {}}; }
  static Intervention inject(int message, Bytes bytes) {
    return {Kind::Inject, message, Millis{0}, std::move(bytes)};
  }
  static Intervention reroute(int message) { return {Kind::Reroute, message, Millis{0}, {}}; }
};

struct SessionOptions {
  std::vector<Intervention> interventions;
  Millis latency{0};  // added before every hop
};

enum class PartyStatus { NotReached, Accepted, Rejected };

struct PartyOutcome {
  PartyStatus status = PartyStatus::NotReached;
  std::optional<RejectReason> reason;
  std::optional<FieldElement> session_key;
};

struct SessionResult {
  Protocol protocol = Protocol::Dpi;
  PartyOutcome user;
  PartyOutcome server;
  PartyOutcome cs;
  Transcript transcript;  // only this session's entries
  HashMeter meter;
  std::vector<Bytes> rerouted;

  bool completed() const;
  // All three parties accepted and derived the same key.
  bool keys_agree() const;
  // First rejection in flow order, if any.
  std::optional<std::pair<Party, RejectReason>> rejection() const;
};

/// Runs U -> S -> CS -> S -> U once, applying interventions at their
/// sequence points. Resets the deployment's meter first.
SessionResult run_session(Deployment& deployment, const std::string& user,
                          const Identity& server, const SessionOptions& options = {});

// --- Complexity metering ----------------------------------------------------

struct ComplexityRow {
  std::uint64_t user_login = 0;
  std::uint64_t user_ake = 0;
  std::uint64_t server_ake = 0;
  std::uint64_t cs_ake = 0;
  std::uint64_t cs_optional = 0;
  // Outside the comparison table: the user's pseudonym and credential
  // recovery from the card (improved protocol only) and each role's
  // session-key hash.
  std::uint64_t user_card_unmask = 0;
  std::uint64_t user_sk = 0;
  std::uint64_t server_sk = 0;
  std::uint64_t cs_sk = 0;

  friend bool operator==(const ComplexityRow&, const ComplexityRow&) = default;
};

ComplexityRow meter_report(const HashMeter& meter);

/// Published per-role hash counts for login and AKE phases.
ComplexityRow published_complexity(Protocol protocol);

}  // namespace akalab
