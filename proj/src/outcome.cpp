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

#include "akalab/outcome.hpp"

namespace akalab {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::Login: return "login";
    case RejectReason::ServerAuth: return "server-auth";
    case RejectReason::UserAuth: return "user-auth";
    case RejectReason::CsAuth: return "cs-auth";
    case RejectReason::PeerAuth: return "peer-auth";
    case RejectReason::Timeout: return "timeout";
    case RejectReason::IdentityBinding: return "identity-binding";
    case RejectReason::Malformed: return "malformed";
  }
  return "unknown";
}

}  // namespace akalab
