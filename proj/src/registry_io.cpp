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

#include "akalab/registry_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "akalab/errors.hpp"
#include "akalab/hash.hpp"
#include "akalab/meter.hpp"

namespace akalab {
namespace {

constexpr std::string_view kHeaderTag = "AKAREG";
constexpr std::string_view kVersion = "1";

// Splits off `count` space-separated tokens; the remainder (which may contain
// spaces) is returned as the final element.
std::vector<std::string_view> split(std::string_view line, std::size_t count) {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) {
      out.push_back(line);
      return out;
    }
    out.push_back(line.substr(0, sp));
    line.remove_prefix(sp + 1);
  }
  out.push_back(line);
  return out;
}

FieldElement field(std::string_view hex, std::size_t line_no) {
  try {
    return FieldElement::from_hex(hex);
  } catch (const EncodingError& e) {
    throw FormatError(std::string("bad field: ") + e.what(), line_no);
  }
}

Identity identity(std::string_view text, std::size_t line_no) {
  try {
    return Identity(std::string(text));
  } catch (const EncodingError& e) {
    throw FormatError(std::string("bad identity: ") + e.what(), line_no);
  }
}

void check_line_safe(const Identity& id) {
  if (id.text().find('\n') != std::string::npos || id.text().find('\r') != std::string::npos) {
    throw EncodingError("identity with a line break cannot be persisted: " + id.text());
  }
}

}  // namespace

std::string format_registry(const dpi::CsRegistry& registry) {
  std::ostringstream out;
  out << kHeaderTag << ' ' << kVersion << ' ' << registry.secrets().x.hex() << ' '
      << registry.secrets().y.hex() << '\n';
  for (const auto& [pid, user] : registry.users()) {
    check_line_safe(user.id);
    out << "U " << pid.hex() << ' ' << user.salt.hex() << ' ' << user.a.hex() << ' '
        << user.id.text() << '\n';
  }
  for (const auto& [psid, server] : registry.servers()) {
    check_line_safe(server.sid);
    out << "S " << psid.hex() << ' ' << server.salt.hex() << ' ' << server.sid.text() << '\n';
  }
  return out.str();
}

dpi::CsRegistry parse_registry(std::string_view text) {
  MeterScope scope(Role::Registrar, Phase::Registration);
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) {
      throw FormatError("registry truncated: last line has no newline", lines.size() + 1);
    }
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw FormatError("registry is empty: missing header", 1);

  const auto header = split(lines[0], 3);
  if (header.size() != 4 || header[0] != kHeaderTag) {
    throw FormatError("bad registry header", 1);
  }
  if (header[1] != kVersion) throw FormatError("unsupported registry version", 1);
  dpi::CsRegistry registry(CsSecrets{field(header[2], 1), field(header[3], 1)});

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    try {
      if (line.starts_with("U ")) {
        const auto parts = split(line.substr(2), 3);
        if (parts.size() != 4) throw FormatError("user record needs 4 fields", line_no);
        const FieldElement pid = field(parts[0], line_no);
        dpi::UserRecord record{identity(parts[3], line_no), field(parts[1], line_no),
                               field(parts[2], line_no)};
        if (dpi::pseudonym(record.id, record.salt) != pid) {
          throw FormatError("user pseudonym does not match h(ID || b)", line_no);
        }
        registry.insert_user(pid, std::move(record));
      } else if (line.starts_with("S ")) {
        const auto parts = split(line.substr(2), 2);
        if (parts.size() != 3) throw FormatError("server record needs 3 fields", line_no);
        const FieldElement psid = field(parts[0], line_no);
        dpi::ServerRecord record{identity(parts[2], line_no), field(parts[1], line_no)};
        if (dpi::pseudonym(record.sid, record.salt) != psid) {
          throw FormatError("server pseudonym does not match h(SID || d)", line_no);
        }
        registry.insert_server(psid, std::move(record));
      } else {
        throw FormatError("unknown record type", line_no);
      }
    } catch (const RegistrationError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return registry;
}

void persist_registry(const dpi::CsRegistry& registry, const std::filesystem::path& path) {
  const std::string text = format_registry(registry);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open registry file for writing: " + tmp);
    out << text;
    if (!out) throw Error("failed writing registry file: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

dpi::CsRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open registry file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

}  // namespace akalab
