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

#include "akalab/smartcard.hpp"

#include <fstream>
#include <iterator>

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"

namespace akalab {
namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'K', 'A', 'C'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kProtocolLi = 0x01;
constexpr std::uint8_t kProtocolDpi = 0x02;
constexpr std::size_t kHeaderSize = 6;

FieldElement field_at(ByteView data, std::size_t index) {
  return FieldElement::from_bytes(
      data.subspan(kHeaderSize + index * FieldElement::kSize, FieldElement::kSize));
}

}  // namespace

SmartCardLi issue_card_li(const Identity& id, const Password& password,
                          const FieldElement& b, const FieldElement& x,
                          const FieldElement& y) {
  MeterScope scope(Role::Registrar, Phase::Registration);
  const FieldElement a = hash_of(b, password);
  const FieldElement user_secret = hash_of(id, x);
  const FieldElement h_y = hash_of(y);
  SmartCardLi card;
  card.c = hash_of(id, h_y, a);
  card.d = user_secret ^ hash_of(id, a);
  card.e = user_secret ^ hash_of(y, x);
  card.h_y = h_y;
  card.b = b;
  return card;
}

Outcome<LiLogin> local_login_li(const SmartCardLi& card, const Identity& id,
                                const Password& password) {
  MeterScope scope(Role::User, Phase::Login);
  const FieldElement a = hash_of(card.b, password);
  if (hash_of(id, card.h_y, a) != card.c) return Rejection{RejectReason::Login};
  PhaseScope ake(Phase::Ake);
  return LiLogin{a, card.d ^ hash_of(id, a)};
}

SmartCardDpi personalize_card_dpi(const Identity& id, const Password& password,
                                  const FieldElement& b,
                                  const FieldElement& user_secret) {
  MeterScope scope(Role::User, Phase::Registration);
  const FieldElement a = hash_of(b, password);
  const FieldElement pid = hash_of(id, b);
  SmartCardDpi card;
  card.c = hash_of(id, a);
  card.d = user_secret ^ hash_of(pid ^ a);
  card.b = b;
  return card;
}

Outcome<DpiLogin> local_login_dpi(const SmartCardDpi& card, const Identity& id,
                                  const Password& password) {
  MeterScope scope(Role::User, Phase::Login);
  const FieldElement a = hash_of(card.b, password);
  if (hash_of(id, a) != card.c) return Rejection{RejectReason::Login};
  PhaseScope unmask(Phase::CardUnmask);
  const FieldElement pid = hash_of(id, card.b);
  return DpiLogin{a, card.d ^ hash_of(pid ^ a), pid, card.b};
}

Bytes encode_card(const SmartCard& card) {
  Bytes out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  if (const auto* li = std::get_if<SmartCardLi>(&card)) {
    out.push_back(kProtocolLi);
    append(out, li->c);
    append(out, li->d);
    append(out, li->e);
    append(out, li->h_y);
    append(out, li->b);
  } else {
    const auto& dpi = std::get<SmartCardDpi>(card);
    out.push_back(kProtocolDpi);
    append(out, dpi.c);
    append(out, dpi.d);
    append(out, dpi.b);
  }
  return out;
}

SmartCard decode_card(ByteView data) {
  if (data.size() < kHeaderSize) throw FormatError("card file truncated", data.size());
  for (std::size_t i = 0; i < 4; ++i) {
    if (data[i] != kMagic[i]) throw FormatError("bad card magic", i);
  }
  if (data[4] != kVersion) throw FormatError("unsupported card version", 4);
  const std::uint8_t protocol = data[5];
  std::size_t fields = 0;
  if (protocol == kProtocolLi) {
    fields = 5;
  } else if (protocol == kProtocolDpi) {
    fields = 3;
  } else {
    throw FormatError("unknown card protocol", 5);
  }
  const std::size_t expected = kHeaderSize + fields * FieldElement::kSize;
  if (data.size() != expected) {
    throw FormatError("card file has wrong length", std::min(data.size(), expected));
  }
  if (protocol == kProtocolLi) {
    return SmartCardLi{field_at(data, 0), field_at(data, 1), field_at(data, 2),
                       field_at(data, 3), field_at(data, 4)};
  }
  return SmartCardDpi{field_at(data, 0), field_at(data, 1), field_at(data, 2)};
}

void save_card(const SmartCard& card, const std::filesystem::path& path) {
  const Bytes data = encode_card(card);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open card file for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("failed writing card file: " + path.string());
}

SmartCard load_card(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open card file: " + path.string());
  const Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_card(data);
}

}  // namespace akalab
