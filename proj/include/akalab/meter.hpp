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
#include <map>
#include <string_view>
#include <utility>

namespace akalab {

enum class Role : std::uint8_t { User, Server, ControlServer, Registrar, Adversary };

// Phases follow the column split of the complexity comparison: the terminal
// password check is Login, message computation is Ake. CardUnmask holds the
// user's pseudonym and credential recovery in the improved protocol, and
// AkeOptional holds the control server's identity-binding (traceability)
// hashes.
enum class Phase : std::uint8_t {
  Registration,
  Login,
  CardUnmask,
  Ake,
  AkeOptional,
  SessionKey,
  Attack,
};

std::string_view to_string(Role role);
std::string_view to_string(Phase phase);

/// Counts hash invocations per (role, phase).
class HashMeter {
 public:
  void record(Role role, Phase phase) { ++counts_[{role, phase}]; }
  std::uint64_t count(Role role, Phase phase) const;
  std::uint64_t total(Role role) const;
  std::uint64_t total() const;
  void reset() { counts_.clear(); }

  const std::map<std::pair<Role, Phase>, std::uint64_t>& counts() const {
    return counts_;
  }

 private:
  std::map<std::pair<Role, Phase>, std::uint64_t> counts_;
};

/// Routes every hash() on this thread to `meter` while alive.
class MeterInstall {
 public:
  explicit MeterInstall(HashMeter& meter);
  ~MeterInstall();
  MeterInstall(const MeterInstall&) = delete;
  MeterInstall& operator=(const MeterInstall&) = delete;

 private:
  HashMeter* previous_;
};

/// Attributes hashes on this thread to (role, phase) while alive. Nests.
class MeterScope {
 public:
  MeterScope(Role role, Phase phase);
  ~MeterScope();
  MeterScope(const MeterScope&) = delete;
  MeterScope& operator=(const MeterScope&) = delete;

 private:
  Role prev_role_;
  Phase prev_phase_;
};

/// Switches only the phase, keeping the enclosing role.
class PhaseScope {
 public:
  explicit PhaseScope(Phase phase);
  ~PhaseScope();
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  Phase prev_phase_;
};

namespace detail {
void record_hash();
}

}  // namespace akalab
