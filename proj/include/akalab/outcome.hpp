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

#include <string_view>
#include <utility>
#include <variant>

#include "akalab/errors.hpp"

namespace akalab {

/// Which check caused a party to terminate the session.
enum class RejectReason {
  Login,            // terminal password/identity check
  ServerAuth,       // control server could not authenticate the server
  UserAuth,         // control server could not authenticate the user
  CsAuth,           // server could not authenticate the control server
  PeerAuth,         // user could not authenticate control server and server
  Timeout,          // timestamp older than the freshness window
  IdentityBinding,  // recovered identity does not hash to the pseudonym
  Malformed,        // wire bytes did not decode
};

std::string_view to_string(RejectReason reason);

struct Rejection {
  RejectReason reason;
};

/// Either a value or the reason a protocol check rejected.
template <typename T>
class [[nodiscard]] Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}
  Outcome(Rejection rejection) : state_(rejection.reason) {}

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    check();
    return std::get<T>(state_);
  }
  T& value() & {
    check();
    return std::get<T>(state_);
  }
  T&& value() && {
    check();
    return std::get<T>(std::move(state_));
  }

  // Only meaningful when !ok().
  RejectReason reason() const {
    if (ok()) throw StateError("outcome was accepted; no reject reason");
    return std::get<RejectReason>(state_);
  }

 private:
  void check() const {
    if (!ok()) {
      throw StateError(std::string("rejected: ") +
                       std::string(to_string(std::get<RejectReason>(state_))));
    }
  }

  std::variant<T, RejectReason> state_;
};

}  // namespace akalab

namespace akalab {

/// A protocol step's output: the message to send and the sender's new state.
template <typename Message, typename State>
struct Step {
  Message message;
  State state;
};

}  // namespace akalab
