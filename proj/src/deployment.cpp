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

#include "akalab/deployment.hpp"

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"

namespace akalab {
namespace {

constexpr std::uint64_t kRegistrarStream = 100;

template <typename Message, typename Decode>
std::optional<Message> try_decode(ByteView bytes, Decode decode) {
  try {
    return decode(bytes);
  } catch (const FormatError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string PublicNetwork::message_type(int index) const {
  return std::string(to_string(protocol())) + ".m" + std::to_string(index);
}

Deployment::Deployment(const DeploymentConfig& config)
    : config_(config),
      clock_(config.start),
      channel_(clock_),
      registrar_rng_(config.seed, kRegistrarStream) {
  rngs_.emplace(Party::User, Rng(config.seed, 1));
  rngs_.emplace(Party::Server, Rng(config.seed, 2));
  rngs_.emplace(Party::ControlServer, Rng(config.seed, 3));
}

Rng& Deployment::rng(Party party) { return rngs_.at(party); }

std::optional<FieldElement> Deployment::session_key(Party party, SessionId session) const {
  auto it = keys_.find({party, session});
  if (it == keys_.end()) return std::nullopt;
  return it->second;
}

// --- Li ----------------------------------------------------------------------

LiDeployment::LiDeployment(const DeploymentConfig& config, const CsSecrets& secrets)
    : Deployment(config), secrets_(secrets) {}

const SmartCardLi& LiDeployment::register_user(const Identity& id, const Password& password) {
  MeterInstall install(meter_);
  const FieldElement b = random_field(registrar_rng_);
  add_user(id, password, issue_card_li(id, password, b, secrets_.x, secrets_.y));
  return users_.at(id.text()).card;
}

void LiDeployment::add_user(const Identity& id, const Password& password,
                            const SmartCardLi& card) {
  if (!users_.emplace(id.text(), User{id, password, card}).second) {
    throw RegistrationError("duplicate user " + id.text());
  }
}

void LiDeployment::register_server(const Identity& sid) {
  MeterInstall install(meter_);
  if (!servers_.emplace(sid.text(), li::provision_server(sid, secrets_)).second) {
    throw RegistrationError("duplicate server " + sid.text());
  }
}

const SmartCardLi& LiDeployment::card(const std::string& user) const {
  auto it = users_.find(user);
  if (it == users_.end()) throw Error("unknown user " + user);
  return it->second.card;
}

Outcome<Emitted> LiDeployment::user_begin(const std::string& user, const Identity& server) {
  auto it = users_.find(user);
  if (it == users_.end()) throw Error("unknown user " + user);
  MeterInstall install(meter_);
  auto login = local_login_li(it->second.card, it->second.id, it->second.password);
  if (!login) return Rejection{login.reason()};
  auto step = li::user_step1(it->second.card, login.value(), server, rng(Party::User));
  const SessionId session = next_session();
  user_sessions_.emplace(session, step.state);
  return Emitted{session, li::encode(step.message)};
}

Outcome<Emitted> LiDeployment::deliver_m1(Party from, const Identity& server, ByteView m1) {
  channel_.deliver(from, Party::Server, message_type(1), Bytes(m1.begin(), m1.end()));
  auto it = servers_.find(server.text());
  if (it == servers_.end()) throw Error("unknown server " + server.text());
  auto message = try_decode<li::M1>(m1, li::decode_m1);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = li::server_step2(*message, it->second, rng(Party::Server));
  const SessionId session = next_session();
  server_sessions_.emplace(session, step.state);
  return Emitted{session, li::encode(step.message)};
}

Outcome<Emitted> LiDeployment::deliver_m2(Party from, ByteView m2) {
  channel_.deliver(from, Party::ControlServer, message_type(2), Bytes(m2.begin(), m2.end()));
  auto message = try_decode<li::M2>(m2, li::decode_m2);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = li::cs_step3(*message, secrets_, rng(Party::ControlServer));
  if (!step) return Rejection{step.reason()};
  const SessionId session = next_session();
  record_key(Party::ControlServer, session, li::session_key(step.value().state));
  return Emitted{session, li::encode(step.value().message)};
}

Outcome<Emitted> LiDeployment::deliver_m3(Party from, SessionId server_session, ByteView m3) {
  channel_.deliver(from, Party::Server, message_type(3), Bytes(m3.begin(), m3.end()));
  auto it = server_sessions_.find(server_session);
  if (it == server_sessions_.end()) throw Error("unknown server session");
  auto message = try_decode<li::M3>(m3, li::decode_m3);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = li::server_step4(*message, it->second);
  if (!step) return Rejection{step.reason()};
  it->second = step.value().state;
  record_key(Party::Server, server_session, li::session_key(it->second));
  return Emitted{server_session, li::encode(step.value().message)};
}

Outcome<Accepted> LiDeployment::deliver_m4(Party from, SessionId user_session, ByteView m4) {
  channel_.deliver(from, Party::User, message_type(4), Bytes(m4.begin(), m4.end()));
  auto it = user_sessions_.find(user_session);
  if (it == user_sessions_.end()) throw Error("unknown user session");
  auto message = try_decode<li::M4>(m4, li::decode_m4);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto state = li::user_step5(*message, it->second);
  if (!state) return Rejection{state.reason()};
  it->second = state.value();
  record_key(Party::User, user_session, li::session_key(it->second));
  return Accepted{};
}

// --- DPI ---------------------------------------------------------------------

DpiDeployment::DpiDeployment(const DeploymentConfig& config, dpi::CsRegistry registry)
    : Deployment(config), registry_(std::move(registry)) {}

const SmartCardDpi& DpiDeployment::register_user(const Identity& id,
                                                 const Password& password) {
  MeterInstall install(meter_);
  const FieldElement salt = random_field(registrar_rng_);
  FieldElement a;
  {
    MeterScope scope(Role::User, Phase::Registration);
    a = hash_of(salt, password);
  }
  const FieldElement b = dpi::register_user(registry_, id, salt, a);
  add_user(id, password, personalize_card_dpi(id, password, salt, b));
  return users_.at(id.text()).card;
}

void DpiDeployment::add_user(const Identity& id, const Password& password,
                             const SmartCardDpi& card) {
  if (!users_.emplace(id.text(), User{id, password, card}).second) {
    throw RegistrationError("duplicate user " + id.text());
  }
}

const dpi::ServerCredential& DpiDeployment::register_server(const Identity& sid) {
  MeterInstall install(meter_);
  const FieldElement salt = random_field(registrar_rng_);
  add_server(dpi::register_server(registry_, sid, salt));
  return servers_.at(sid.text());
}

void DpiDeployment::add_server(const dpi::ServerCredential& credential) {
  if (!servers_.emplace(credential.sid.text(), credential).second) {
    throw RegistrationError("duplicate server " + credential.sid.text());
  }
}

DpiDeployment::User& DpiDeployment::user(const std::string& name) {
  auto it = users_.find(name);
  if (it == users_.end()) throw Error("unknown user " + name);
  return it->second;
}

Outcome<Accepted> DpiDeployment::update_password(const std::string& name,
                                                 const Password& new_password) {
  User& u = user(name);
  MeterInstall install(meter_);
  auto card = dpi::password_update(u.card, u.id, u.password, new_password, registry_);
  if (!card) return Rejection{card.reason()};
  u.card = card.value();
  u.password = new_password;
  return Accepted{};
}

Outcome<Accepted> DpiDeployment::rotate_pseudonym(const std::string& name) {
  User& u = user(name);
  MeterInstall install(meter_);
  auto card = dpi::pid_update(u.card, u.id, u.password, random_field(registrar_rng_), registry_);
  if (!card) return Rejection{card.reason()};
  u.card = card.value();
  return Accepted{};
}

const dpi::ServerCredential& DpiDeployment::rotate_server_pseudonym(const std::string& sid) {
  auto it = servers_.find(sid);
  if (it == servers_.end()) throw Error("unknown server " + sid);
  MeterInstall install(meter_);
  it->second = dpi::psid_update(it->second, random_field(registrar_rng_), registry_);
  return it->second;
}

const SmartCardDpi& DpiDeployment::card(const std::string& name) const {
  auto it = users_.find(name);
  if (it == users_.end()) throw Error("unknown user " + name);
  return it->second.card;
}

const dpi::ServerCredential& DpiDeployment::server(const std::string& sid) const {
  auto it = servers_.find(sid);
  if (it == servers_.end()) throw Error("unknown server " + sid);
  return it->second;
}

Outcome<Emitted> DpiDeployment::user_begin(const std::string& name, const Identity& server) {
  User& u = user(name);
  MeterInstall install(meter_);
  auto login = local_login_dpi(u.card, u.id, u.password);
  if (!login) return Rejection{login.reason()};
  auto step = dpi::user_step1(login.value(), u.id, server, clock_.now(Party::User),
                              rng(Party::User));
  const SessionId session = next_session();
  user_sessions_.emplace(session, step.state);
  return Emitted{session, dpi::encode(step.message)};
}

Outcome<Emitted> DpiDeployment::deliver_m1(Party from, const Identity& server, ByteView m1) {
  channel_.deliver(from, Party::Server, message_type(1), Bytes(m1.begin(), m1.end()));
  auto it = servers_.find(server.text());
  if (it == servers_.end()) throw Error("unknown server " + server.text());
  auto message = try_decode<dpi::M1>(m1, dpi::decode_m1);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = dpi::server_step2(*message, it->second, config_.server_window,
                                clock_.now(Party::Server), rng(Party::Server));
  if (!step) return Rejection{step.reason()};
  const SessionId session = next_session();
  server_sessions_.emplace(session, step.value().state);
  return Emitted{session, dpi::encode(step.value().message)};
}

Outcome<Emitted> DpiDeployment::deliver_m2(Party from, ByteView m2) {
  channel_.deliver(from, Party::ControlServer, message_type(2), Bytes(m2.begin(), m2.end()));
  auto message = try_decode<dpi::M2>(m2, dpi::decode_m2);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = dpi::cs_step3(*message, registry_, config_.cs_window,
                            clock_.now(Party::ControlServer), rng(Party::ControlServer));
  if (!step) return Rejection{step.reason()};
  const SessionId session = next_session();
  record_key(Party::ControlServer, session, dpi::session_key(step.value().state));
  return Emitted{session, dpi::encode(step.value().message)};
}

Outcome<Emitted> DpiDeployment::deliver_m3(Party from, SessionId server_session, ByteView m3) {
  channel_.deliver(from, Party::Server, message_type(3), Bytes(m3.begin(), m3.end()));
  auto it = server_sessions_.find(server_session);
  if (it == server_sessions_.end()) throw Error("unknown server session");
  auto message = try_decode<dpi::M3>(m3, dpi::decode_m3);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto step = dpi::server_step4(*message, it->second);
  if (!step) return Rejection{step.reason()};
  it->second = step.value().state;
  record_key(Party::Server, server_session, dpi::session_key(it->second));
  return Emitted{server_session, dpi::encode(step.value().message)};
}

Outcome<Accepted> DpiDeployment::deliver_m4(Party from, SessionId user_session, ByteView m4) {
  channel_.deliver(from, Party::User, message_type(4), Bytes(m4.begin(), m4.end()));
  auto it = user_sessions_.find(user_session);
  if (it == user_sessions_.end()) throw Error("unknown user session");
  auto message = try_decode<dpi::M4>(m4, dpi::decode_m4);
  if (!message) return Rejection{RejectReason::Malformed};
  MeterInstall install(meter_);
  auto state = dpi::user_step5(*message, it->second);
  if (!state) return Rejection{state.reason()};
  it->second = state.value();
  record_key(Party::User, user_session, dpi::session_key(it->second));
  return Accepted{};
}

}  // namespace akalab
