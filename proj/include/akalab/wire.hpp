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

#include <cstdint>
#include <string_view>
#include <vector>

#include "akalab/bytes.hpp"

namespace akalab::wire {

// One-byte type tags for every field that appears on the wire.
enum class Tag : std::uint8_t {
  F = 0x01,
  G = 0x02,
  Pij = 0x03,
  Cid = 0x04,
  Sid = 0x05,
  K = 0x06,
  M = 0x07,
  Q = 0x08,
  R = 0x09,
  V = 0x0A,
  T = 0x0B,
  Pid = 0x0C,
  Ts = 0x0D,
  J = 0x0E,
  L = 0x0F,
  Psid = 0x10,
  P = 0x11,
};

std::string_view to_string(Tag tag);

struct Field {
  std::uint8_t tag;
  Bytes value;
};

/// Builds a message as a sequence of (tag, 2-byte big-endian length, value).
class Writer {
 public:
  Writer& put(Tag tag, ByteView value);
  Writer& put(Tag tag, const FieldElement& value) { return put(tag, value.view()); }
  Writer& put(Tag tag, const Identity& value) { return put(tag, value.block()); }
  Writer& put(Tag tag, const Timestamp& value);
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

/// Strict reader: fields must arrive in the expected order with the expected
/// widths, and nothing may follow the last one. Throws FormatError carrying
/// the byte offset of the problem.
class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  FieldElement field(Tag tag);
  Identity identity(Tag tag);
  Timestamp timestamp(Tag tag);
  void finish() const;

 private:
  ByteView next(Tag tag, std::size_t width);

  ByteView data_;
  std::size_t pos_ = 0;
};

/// Generic parse without a schema, for scanning transcripts.
std::vector<Field> parse(ByteView data);

}  // namespace akalab::wire
