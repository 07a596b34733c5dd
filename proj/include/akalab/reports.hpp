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

#include <string>
#include <vector>

#include "akalab/deployment.hpp"
#include "akalab/scenario.hpp"

namespace akalab {

/// One security-functionality row: the protocol resists iff every listed
/// attack ends in FAILURE (and, for denial of service, the honest parties
/// spent no hash work on the replayed message).
struct SecurityRow {
  std::string label;
  std::vector<AttackKind> attacks;
  bool expected_dpi = true;
  bool expected_li = false;
  bool dpi = false;
  bool li = false;

  bool pass_dpi() const { return dpi == expected_dpi; }
  bool pass_li() const { return li == expected_li; }
};

std::vector<SecurityRow> security_matrix(const ScenarioConfig& config);

/// Hash counts of one metered honest session next to the published figures.
struct ComplexityComparison {
  Protocol protocol = Protocol::Dpi;
  ComplexityRow measured;
  ComplexityRow published;

  bool login_ok() const { return measured.user_login == published.user_login; }
  bool user_ok() const { return measured.user_ake == published.user_ake; }
  bool server_ok() const { return measured.server_ake == published.server_ake; }
  bool cs_ok() const { return measured.cs_ake == published.cs_ake; }
  bool cs_total_ok() const {
    return measured.cs_ake + measured.cs_optional == published.cs_ake + published.cs_optional;
  }
  bool all_ok() const { return login_ok() && user_ok() && server_ok() && cs_ok() && cs_total_ok(); }
};

ComplexityComparison measure_complexity(Protocol protocol, std::uint64_t seed);

}  // namespace akalab
