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

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace akalab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
// Accepts upper or lower case; throws EncodingError on odd length or bad digits.
Bytes from_hex(std::string_view hex);

/// Fixed-width 32-byte value. Every hashed or XOR-combined protocol quantity
/// (nonces, masks, card fields, pseudonyms, session keys) is one of these.
class FieldElement {
 public:
  static constexpr std::size_t kSize = 32;

  constexpr FieldElement() = default;
  explicit constexpr FieldElement(const std::array<std::uint8_t, kSize>& bytes)
      : bytes_(bytes) {}

  // Throws EncodingError unless `bytes` is exactly kSize long.
  static FieldElement from_bytes(ByteView bytes);
  static FieldElement from_hex(std::string_view hex);
  static constexpr FieldElement zero() { return FieldElement(); }

  ByteView view() const { return bytes_; }
  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }
  std::string hex() const { return to_hex(bytes_); }
  bool is_zero() const;

  // Returns a copy with bit `bit` (0 = MSB of byte 0) inverted.
  FieldElement with_bit_flipped(std::size_t bit) const;

  FieldElement& operator^=(const FieldElement& other);
  friend FieldElement operator^(FieldElement lhs, const FieldElement& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

/// A user or server identity: 1..32 bytes of UTF-8, carried as one
/// right-zero-padded 32-byte block so it can be XOR-masked like any other
/// field.
class Identity {
 public:
  // Strict: 1..32 bytes, valid UTF-8, no trailing NUL. Throws EncodingError.
  explicit Identity(std::string text);

  // Lenient decode of a padded block: strips trailing zero bytes and only
  // requires a non-empty remainder. Used for wire values and unmasked
  // identities, which may be garbage after tampering.
  static Identity from_block(const FieldElement& block);

  const std::string& text() const { return text_; }
  const FieldElement& block() const { return block_; }

  friend bool operator==(const Identity& a, const Identity& b) {
    return a.block_ == b.block_;
  }

 private:
  struct Unchecked {};
  Identity(Unchecked, std::string text);

  std::string text_;
  FieldElement block_;
};

/// Milliseconds since the epoch; concatenated as 8 big-endian bytes.
struct Timestamp {
  std::uint64_t millis = 0;

  std::array<std::uint8_t, 8> encode() const;
  static Timestamp decode(ByteView bytes);

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// The two-bit domain separators "00" and "11"; each occupies one byte.
enum class Tag2Bit : std::uint8_t { k00 = 0x00, k11 = 0x03 };

/// A password as typed at the terminal. Encoded as its raw bytes.
struct Password {
  std::string text;
};

// Canonical encodings used by concatenation.
void append(Bytes& out, ByteView raw);
void append(Bytes& out, const FieldElement& v);
void append(Bytes& out, const Identity& v);
void append(Bytes& out, const Timestamp& v);
void append(Bytes& out, Tag2Bit v);
void append(Bytes& out, const Password& v);

/// Joins the canonical encodings of `parts` with no separators.
template <typename... Parts>
Bytes concat(const Parts&... parts) {
  Bytes out;
  (append(out, parts), ...);
  return out;
}

}  // namespace akalab
