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

#include "akalab/meter.hpp"

namespace akalab {
namespace {

thread_local HashMeter* g_meter = nullptr;
thread_local Role g_role = Role::Adversary;
thread_local Phase g_phase = Phase::Attack;

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::User: return "user";
    case Role::Server: return "server";
    case Role::ControlServer: return "cs";
    case Role::Registrar: return "registrar";
    case Role::Adversary: return "adversary";
  }
  return "unknown";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Registration: return "registration";
    case Phase::Login: return "login";
    case Phase::CardUnmask: return "card-unmask";
    case Phase::Ake: return "ake";
    case Phase::AkeOptional: return "ake-optional";
    case Phase::SessionKey: return "session-key";
    case Phase::Attack: return "attack";
  }
  return "unknown";
}

std::uint64_t HashMeter::count(Role role, Phase phase) const {
  auto it = counts_.find({role, phase});
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t HashMeter::total(Role role) const {
  std::uint64_t sum = 0;
  for (const auto& [key, n] : counts_) {
    if (key.first == role) sum += n;
  }
  return sum;
}

std::uint64_t HashMeter::total() const {
  std::uint64_t sum = 0;
  for (const auto& [key, n] : counts_) sum += n;
  return sum;
}

MeterInstall::MeterInstall(HashMeter& meter) : previous_(g_meter) { g_meter = &meter; }
MeterInstall::~MeterInstall() { g_meter = previous_; }

MeterScope::MeterScope(Role role, Phase phase)
    : prev_role_(g_role), prev_phase_(g_phase) {
  g_role = role;
  g_phase = phase;
}
MeterScope::~MeterScope() {
  g_role = prev_role_;
  g_phase = prev_phase_;
}

PhaseScope::PhaseScope(Phase phase) : prev_phase_(g_phase) { g_phase = phase; }
PhaseScope::~PhaseScope() { g_phase = prev_phase_; }

namespace detail {
void record_hash() {
  if (g_meter != nullptr) g_meter->record(g_role, g_phase);
}
}  // namespace detail

}  // namespace akalab
