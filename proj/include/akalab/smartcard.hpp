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

#include <filesystem>
#include <variant>

#include "akalab/bytes.hpp"
#include "akalab/outcome.hpp"

namespace akalab {

/// Card issued by the control server in the baseline protocol.
///   c = h(ID || h(y) || A),  A = h(b || P)
///   d = B ^ h(ID || A),      B = h(ID || x)
///   e = B ^ h(y || x)
struct SmartCardLi {
  FieldElement c;
  FieldElement d;
  FieldElement e;
  FieldElement h_y;
  FieldElement b;

  friend bool operator==(const SmartCardLi&, const SmartCardLi&) = default;
};

/// Card personalized by the user in the pseudonym protocol.
///   c = h(ID || A),  d = B ^ h(PID ^ A),  PID = h(ID || b)
struct SmartCardDpi {
  FieldElement c;
  FieldElement d;
  FieldElement b;

  friend bool operator==(const SmartCardDpi&, const SmartCardDpi&) = default;
};

using SmartCard = std::variant<SmartCardLi, SmartCardDpi>;

/// What the terminal learns from a successful baseline login.
struct LiLogin {
  FieldElement a;  // h(b || P)
  FieldElement b;  // h(ID || x)
};

/// What the terminal learns from a successful pseudonym-protocol login.
struct DpiLogin {
  FieldElement a;     // h(b || P)
  FieldElement b;     // h(PID || x)
  FieldElement pid;   // h(ID || b)
  FieldElement salt;  // the card's b
};

SmartCardLi issue_card_li(const Identity& id, const Password& password,
                          const FieldElement& b, const FieldElement& x,
                          const FieldElement& y);

// Rejects with RejectReason::Login when (id, password) does not reproduce c.
// The unmasking of B counts towards the AKE phase: the terminal check is the
// whole of the login phase.
Outcome<LiLogin> local_login_li(const SmartCardLi& card, const Identity& id,
                                const Password& password);

SmartCardDpi personalize_card_dpi(const Identity& id, const Password& password,
                                  const FieldElement& b,
                                  const FieldElement& user_secret);

Outcome<DpiLogin> local_login_dpi(const SmartCardDpi& card, const Identity& id,
                                  const Password& password);

// Card file: "AKAC", version 1, protocol byte (1 = Li, 2 = DPI), then the
// fields in declaration order, 32 bytes each.
Bytes encode_card(const SmartCard& card);
SmartCard decode_card(ByteView data);

void save_card(const SmartCard& card, const std::filesystem::path& path);
SmartCard load_card(const std::filesystem::path& path);

}  // namespace akalab
