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

#include "akalab/wire.hpp"

#include "akalab/errors.hpp"

namespace akalab::wire {

std::string_view to_string(Tag tag) {
  switch (tag) {
    case Tag::F: return "F";
    case Tag::G: return "G";
    case Tag::Pij: return "P_ij";
    case Tag::Cid: return "CID";
    case Tag::Sid: return "SID";
    case Tag::K: return "K";
    case Tag::M: return "M";
    case Tag::Q: return "Q";
    case Tag::R: return "R";
    case Tag::V: return "V";
    case Tag::T: return "T";
    case Tag::Pid: return "PID";
    case Tag::Ts: return "TS";
    case Tag::J: return "J";
    case Tag::L: return "L";
    case Tag::Psid: return "PSID";
    case Tag::P: return "P";
  }
  return "?";
}

Writer& Writer::put(Tag tag, ByteView value) {
  if (value.size() > 0xFFFF) throw EncodingError("TLV value exceeds 65535 bytes");
  out_.push_back(static_cast<std::uint8_t>(tag));
  out_.push_back(static_cast<std::uint8_t>(value.size() >> 8));
  out_.push_back(static_cast<std::uint8_t>(value.size() & 0xFF));
  out_.insert(out_.end(), value.begin(), value.end());
  return *this;
}

Writer& Writer::put(Tag tag, const Timestamp& value) {
  const auto enc = value.encode();
  return put(tag, ByteView(enc));
}

ByteView Reader::next(Tag tag, std::size_t width) {
  if (pos_ + 3 > data_.size()) throw FormatError("truncated TLV header", pos_);
  if (data_[pos_] != static_cast<std::uint8_t>(tag)) {
    throw FormatError("expected field " + std::string(to_string(tag)), pos_);
  }
  const std::size_t len = (std::size_t{data_[pos_ + 1]} << 8) | data_[pos_ + 2];
  if (len != width) throw FormatError("bad length for field " + std::string(to_string(tag)), pos_ + 1);
  if (pos_ + 3 + len > data_.size()) throw FormatError("truncated TLV value", pos_ + 3);
  ByteView value = data_.subspan(pos_ + 3, len);
  pos_ += 3 + len;
  return value;
}

FieldElement Reader::field(Tag tag) {
  return FieldElement::from_bytes(next(tag, FieldElement::kSize));
}

Identity Reader::identity(Tag tag) {
  const std::size_t at = pos_;
  const FieldElement block = field(tag);
  try {
    return Identity::from_block(block);
  } catch (const EncodingError& e) {
    throw FormatError(e.what(), at);
  }
}

Timestamp Reader::timestamp(Tag tag) { return Timestamp::decode(next(tag, 8)); }

void Reader::finish() const {
  if (pos_ != data_.size()) throw FormatError("trailing bytes after message", pos_);
}

std::vector<Field> parse(ByteView data) {
  std::vector<Field> out;
  std::size_t pos = 0;
  while (pos < data.size()) {
    if (pos + 3 > data.size()) throw FormatError("truncated TLV header", pos);
    const std::size_t len = (std::size_t{data[pos + 1]} << 8) | data[pos + 2];
    if (pos + 3 + len > data.size()) throw FormatError("truncated TLV value", pos + 3);
    out.push_back({data[pos], Bytes(data.begin() + pos + 3, data.begin() + pos + 3 + len)});
    pos += 3 + len;
  }
  return out;
}

}  // namespace akalab::wire
