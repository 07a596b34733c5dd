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

#include "akalab/sim.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "akalab/errors.hpp"

namespace akalab {

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::Li ? "li" : "dpi";
}

std::string_view to_string(Party party) {
  switch (party) {
    case Party::User: return "user";
    case Party::Server: return "server";
    case Party::ControlServer: return "cs";
    case Party::Adversary: return "adversary";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view text) {
  if (text == "li") return Protocol::Li;
  if (text == "dpi") return Protocol::Dpi;
  throw Error("unknown protocol: " + std::string(text));
}

Party parse_party(std::string_view text) {
  for (Party p : {Party::User, Party::Server, Party::ControlServer, Party::Adversary}) {
    if (to_string(p) == text) return p;
  }
  throw Error("unknown party: " + std::string(text));
}

Timestamp SimClock::now(Party party) const {
  auto it = skew_.find(party);
  if (it == skew_.end()) return now_;
  return Timestamp{now_.millis + static_cast<std::uint64_t>(it->second)};
}

void SimClock::advance(Millis by) {
  if (by.count() < 0) throw Error("simulated clock cannot move backwards");
  now_.millis += static_cast<std::uint64_t>(by.count());
}

const TranscriptEntry& SimChannel::deliver(Party from, Party to, std::string type,
                                           Bytes bytes) {
  transcript_.push_back(
      TranscriptEntry{next_seq_++, clock_->now(), from, to, std::move(type), std::move(bytes)});
  const TranscriptEntry& entry = transcript_.back();
  for (const auto& tap : taps_) tap(entry);
  return entry;
}

void export_transcript(const Transcript& transcript, std::ostream& out) {
  for (const auto& e : transcript) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["t"] = e.time.millis;
    j["from"] = to_string(e.from);
    j["to"] = to_string(e.to);
    j["type"] = e.type;
    j["hex"] = to_hex(e.bytes);
    out << j.dump() << '\n';
  }
}

void export_transcript(const Transcript& transcript, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open transcript file: " + path);
  export_transcript(transcript, out);
  if (!out) throw Error("failed writing transcript file: " + path);
}

Transcript parse_transcript(std::istream& in) {
  Transcript out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TranscriptEntry e;
      e.seq = j.at("seq").get<std::uint64_t>();
      e.time = Timestamp{j.at("t").get<std::uint64_t>()};
      e.from = parse_party(j.at("from").get<std::string>());
      e.to = parse_party(j.at("to").get<std::string>());
      e.type = j.at("type").get<std::string>();
      e.bytes = from_hex(j.at("hex").get<std::string>());
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError(std::string("bad transcript line: ") + ex.what(), line_no);
    } catch (const Error& ex) {
      throw FormatError(std::string("bad transcript line: ") + ex.what(), line_no);
    }
  }
  return out;
}

}  // namespace akalab
