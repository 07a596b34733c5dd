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

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "akalab/bytes.hpp"

namespace akalab {

enum class Protocol : std::uint8_t { Li, Dpi };
enum class Party : std::uint8_t { User, Server, ControlServer, Adversary };

std::string_view to_string(Protocol protocol);
std::string_view to_string(Party party);
Protocol parse_protocol(std::string_view text);
Party parse_party(std::string_view text);

using Millis = std::chrono::milliseconds;

/// Shared simulated wall clock with optional per-party skew.
class SimClock {
 public:
  explicit SimClock(Timestamp start = Timestamp{1'700'000'000'000}) : now_(start) {}

  Timestamp now() const { return now_; }
  Timestamp now(Party party) const;
  void advance(Millis by);
  void set_skew(Party party, Millis skew) { skew_[party] = skew.count(); }

 private:
  Timestamp now_;
  std::map<Party, std::int64_t> skew_;
};

struct TranscriptEntry {
  std::uint64_t seq = 0;
  Timestamp time;
  Party from = Party::User;
  Party to = Party::Server;
  std::string type;  // e.g. "dpi.m2"
  Bytes bytes;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Transcript = std::vector<TranscriptEntry>;

// One JSON object per line: {"seq","t","from","to","type","hex"}.
void export_transcript(const Transcript& transcript, std::ostream& out);
void export_transcript(const Transcript& transcript, const std::string& path);
Transcript parse_transcript(std::istream& in);

/// Public channel. Every delivered message is appended to the transcript and
/// shown to every tap before the receiving party processes it.
class SimChannel {
 public:
  using Tap = std::function<void(const TranscriptEntry&)>;

  explicit SimChannel(const SimClock& clock) : clock_(&clock) {}

  const TranscriptEntry& deliver(Party from, Party to, std::string type, Bytes bytes);
  void add_tap(Tap tap) { taps_.push_back(std::move(tap)); }
  void clear_taps() { taps_.clear(); }
  const Transcript& transcript() const { return transcript_; }

 private:
  const SimClock* clock_;
  Transcript transcript_;
  std::vector<Tap> taps_;
  std::uint64_t next_seq_ = 1;
};

}  // namespace akalab
