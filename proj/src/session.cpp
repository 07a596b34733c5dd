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

namespace akalab {
namespace {

void mark(PartyOutcome& outcome, const std::optional<RejectReason>& reason) {
  outcome.status = reason ? PartyStatus::Rejected : PartyStatus::Accepted;
  outcome.reason = reason;
}

}  // namespace

bool SessionResult::completed() const {
  return user.status == PartyStatus::Accepted && server.status == PartyStatus::Accepted &&
         cs.status == PartyStatus::Accepted;
}

bool SessionResult::keys_agree() const {
  return completed() && user.session_key && server.session_key && cs.session_key &&
         *user.session_key == *server.session_key && *server.session_key == *cs.session_key;
}

std::optional<std::pair<Party, RejectReason>> SessionResult::rejection() const {
  if (user.status == PartyStatus::Rejected && user.reason == RejectReason::Login) {
    return std::pair{Party::User, *user.reason};
  }
  if (server.status == PartyStatus::Rejected) return std::pair{Party::Server, *server.reason};
  if (cs.status == PartyStatus::Rejected) return std::pair{Party::ControlServer, *cs.reason};
  if (user.status == PartyStatus::Rejected) return std::pair{Party::User, *user.reason};
  return std::nullopt;
}

SessionResult run_session(Deployment& deployment, const std::string& user,
                          const Identity& server, const SessionOptions& options) {
  deployment.meter().reset();
  const std::size_t first_entry = deployment.channel().transcript().size();

  SessionResult result;
  result.protocol = deployment.protocol();

  // Applies latency and interventions to message `index`. Returns the bytes
  // to deliver and the effective sender, or nothing if the message never
  // reaches its receiver.
  auto hop = [&](int index, Party from,
                 Bytes bytes) -> std::optional<std::pair<Party, Bytes>> {
    deployment.clock().advance(options.latency);
    for (const auto& iv : options.interventions) {
      if (iv.message != index) continue;
      switch (iv.kind) {
        case Intervention::Kind::Delay:
          deployment.clock().advance(iv.delay);
          break;
        case Intervention::Kind::Inject:
          bytes = iv.payload;
          from = Party::Adversary;
          break;
        case Intervention::Kind::Drop:
          return std::nullopt;
        case Intervention::Kind::Reroute:
          deployment.channel().deliver(from, Party::Adversary, deployment.message_type(index),
                                       bytes);
          result.rerouted.push_back(std::move(bytes));
          return std::nullopt;
      }
    }
    return std::pair{from, std::move(bytes)};
  };

  auto finish = [&]() -> SessionResult {
    const auto& all = deployment.channel().transcript();
    result.transcript.assign(all.begin() + static_cast<std::ptrdiff_t>(first_entry), all.end());
    result.meter = deployment.meter();
    return std::move(result);
  };

  auto m1 = deployment.user_begin(user, server);
  if (!m1) {
    mark(result.user, m1.reason());
    return finish();
  }
  const SessionId user_session = m1.value().session;

  auto d1 = hop(1, Party::User, m1.value().bytes);
  if (!d1) return finish();
  auto m2 = deployment.deliver_m1(d1->first, server, d1->second);
  if (!m2) {
    mark(result.server, m2.reason());
    return finish();
  }
  const SessionId server_session = m2.value().session;

  auto d2 = hop(2, Party::Server, m2.value().bytes);
  if (!d2) return finish();
  auto m3 = deployment.deliver_m2(d2->first, d2->second);
  if (!m3) {
    mark(result.cs, m3.reason());
    return finish();
  }
  mark(result.cs, std::nullopt);
  result.cs.session_key = deployment.session_key(Party::ControlServer, m3.value().session);

  auto d3 = hop(3, Party::ControlServer, m3.value().bytes);
  if (!d3) return finish();
  auto m4 = deployment.deliver_m3(d3->first, server_session, d3->second);
  if (!m4) {
    mark(result.server, m4.reason());
    return finish();
  }
  mark(result.server, std::nullopt);
  result.server.session_key = deployment.session_key(Party::Server, server_session);

  auto d4 = hop(4, Party::Server, m4.value().bytes);
  if (!d4) return finish();
  auto done = deployment.deliver_m4(d4->first, user_session, d4->second);
  if (!done) {
    mark(result.user, done.reason());
    return finish();
  }
  mark(result.user, std::nullopt);
  result.user.session_key = deployment.session_key(Party::User, user_session);
  return finish();
}

ComplexityRow meter_report(const HashMeter& meter) {
  ComplexityRow row;
  row.user_login = meter.count(Role::User, Phase::Login);
  row.user_ake = meter.count(Role::User, Phase::Ake);
  row.server_ake = meter.count(Role::Server, Phase::Ake);
  row.cs_ake = meter.count(Role::ControlServer, Phase::Ake);
  row.cs_optional = meter.count(Role::ControlServer, Phase::AkeOptional);
  row.user_card_unmask = meter.count(Role::User, Phase::CardUnmask);
  row.user_sk = meter.count(Role::User, Phase::SessionKey);
  row.server_sk = meter.count(Role::Server, Phase::SessionKey);
  row.cs_sk = meter.count(Role::ControlServer, Phase::SessionKey);
  return row;
}

ComplexityRow published_complexity(Protocol protocol) {
  ComplexityRow row;
  row.user_login = 2;
  if (protocol == Protocol::Li) {
    row.user_ake = 8;
    row.server_ake = 4;
    row.cs_ake = 13;
    row.cs_optional = 0;
  } else {
    row.user_ake = 6;
    row.server_ake = 5;
    row.cs_ake = 8;
    row.cs_optional = 5;
  }
  return row;
}

}  // namespace akalab
