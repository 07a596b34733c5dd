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

// Independent reference computations for tests: SHA-256 straight from
// OpenSSL over hand-built byte strings, without the library's hash or
// concatenation helpers.

#include <openssl/sha.h>

#include <cstdint>
#include <initializer_list>
#include <string>

#include "akalab/bytes.hpp"

namespace oracle {

using akalab::Bytes;
using akalab::FieldElement;

inline Bytes raw(const FieldElement& f) { return Bytes(f.bytes().begin(), f.bytes().end()); }

inline Bytes id(const std::string& text) {
  Bytes out(32, 0);
  for (std::size_t i = 0; i < text.size(); ++i) out[i] = static_cast<std::uint8_t>(text[i]);
  return out;
}

inline Bytes ts(std::uint64_t millis) {
  Bytes out(8);
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(millis & 0xFF);
    millis >>= 8;
  }
  return out;
}

inline Bytes pw(const std::string& text) { return Bytes(text.begin(), text.end()); }

inline const Bytes kTag00{0x00};
inline const Bytes kTag11{0x03};

inline FieldElement H(std::initializer_list<Bytes> parts) {
  Bytes joined;
  for (const auto& p : parts) joined.insert(joined.end(), p.begin(), p.end());
  std::array<std::uint8_t, 32> digest{};
  SHA256(joined.data(), joined.size(), digest.data());
  return FieldElement(digest);
}

inline FieldElement X(const FieldElement& a, const FieldElement& b) {
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) out[i] = a.bytes()[i] ^ b.bytes()[i];
  return FieldElement(out);
}

}  // namespace oracle
