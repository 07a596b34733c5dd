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
#include <string>
#include <string_view>

#include "akalab/dpi.hpp"

namespace akalab {

// Line-oriented, every line newline-terminated:
//   AKAREG 1 <hex x> <hex y>
//   U <hex PID> <hex b> <hex A> <utf8 ID>
//   S <hex PSID> <hex d> <utf8 SID>
// Users then servers, each in pseudonym order. The file holds the control
// server's secrets and must stay private to it.
std::string format_registry(const dpi::CsRegistry& registry);

// Throws FormatError with the 1-based line number. A final line without its
// newline is reported as truncation.
dpi::CsRegistry parse_registry(std::string_view text);

void persist_registry(const dpi::CsRegistry& registry, const std::filesystem::path& path);
dpi::CsRegistry load_registry(const std::filesystem::path& path);

}  // namespace akalab
