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

#include "akalab/bytes.hpp"

#include <algorithm>

#include "akalab/errors.hpp"

namespace akalab {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, out of range.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

std::string to_hex(ByteView bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0F]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw EncodingError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw EncodingError("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

FieldElement FieldElement::from_bytes(ByteView bytes) {
  if (bytes.size() != kSize) {
    throw EncodingError("field element must be 32 bytes, got " +
                        std::to_string(bytes.size()));
  }
  std::array<std::uint8_t, kSize> raw{};
  std::copy(bytes.begin(), bytes.end(), raw.begin());
  return FieldElement(raw);
}

FieldElement FieldElement::from_hex(std::string_view hex) {
  return from_bytes(akalab::from_hex(hex));
}

bool FieldElement::is_zero() const {
  return std::all_of(bytes_.begin(), bytes_.end(),
                     [](std::uint8_t b) { return b == 0; });
}

FieldElement FieldElement::with_bit_flipped(std::size_t bit) const {
  FieldElement out = *this;
  out.bytes_[(bit / 8) % kSize] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
  return out;
}

FieldElement& FieldElement::operator^=(const FieldElement& other) {
  for (std::size_t i = 0; i < kSize; ++i) bytes_[i] ^= other.bytes_[i];
  return *this;
}

Identity::Identity(std::string text) : text_(std::move(text)) {
  if (text_.empty() || text_.size() > FieldElement::kSize) {
    throw EncodingError("identity must encode to 1..32 bytes, got " +
                        std::to_string(text_.size()));
  }
  if (text_.back() == '\0') {
    throw EncodingError("identity must not end in a NUL byte");
  }
  if (!valid_utf8(text_)) throw EncodingError("identity is not valid UTF-8");
  std::array<std::uint8_t, FieldElement::kSize> raw{};
  std::copy(text_.begin(), text_.end(), raw.begin());
  block_ = FieldElement(raw);
}

Identity::Identity(Unchecked, std::string text) : text_(std::move(text)) {
  std::array<std::uint8_t, FieldElement::kSize> raw{};
  std::copy(text_.begin(), text_.end(), raw.begin());
  block_ = FieldElement(raw);
}

Identity Identity::from_block(const FieldElement& block) {
  const auto& raw = block.bytes();
  std::size_t len = raw.size();
  while (len > 0 && raw[len - 1] == 0) --len;
  if (len == 0) throw EncodingError("identity block is all zero");
  return Identity(Unchecked{}, std::string(raw.begin(), raw.begin() + len));
}

std::array<std::uint8_t, 8> Timestamp::encode() const {
  std::array<std::uint8_t, 8> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(millis >> (8 * (7 - i)));
  }
  return out;
}

Timestamp Timestamp::decode(ByteView bytes) {
  if (bytes.size() != 8) throw EncodingError("timestamp must be 8 bytes");
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  return Timestamp{v};
}

void append(Bytes& out, ByteView raw) { out.insert(out.end(), raw.begin(), raw.end()); }
void append(Bytes& out, const FieldElement& v) { append(out, v.view()); }
void append(Bytes& out, const Identity& v) { append(out, v.block().view()); }
void append(Bytes& out, const Timestamp& v) {
  const auto enc = v.encode();
  append(out, ByteView(enc));
}
void append(Bytes& out, Tag2Bit v) { out.push_back(static_cast<std::uint8_t>(v)); }
void append(Bytes& out, const Password& v) {
  out.insert(out.end(), v.text.begin(), v.text.end());
}

}  // namespace akalab
