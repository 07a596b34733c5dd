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

// Test deployments with one user and one server registered.

#include <memory>
#include <string>

#include "akalab/deployment.hpp"

namespace testing_world {

using namespace akalab;

struct WorldSetup {
  Protocol protocol = Protocol::Dpi;
  std::uint64_t seed = 0;
  std::string user = "alice";
  std::string password = "alice-pw";
  std::string server = "srv-n";
  Millis server_window = dpi::kDefaultFreshnessWindow;
  Millis cs_window = dpi::kDefaultFreshnessWindow;
};

inline CsSecrets secrets_for(std::uint64_t seed) {
  Rng rng(seed, 900);
  const FieldElement x = random_field(rng);
  return CsSecrets{x, random_field(rng)};
}

inline std::unique_ptr<Deployment> make_world(const WorldSetup& setup) {
  DeploymentConfig config;
  config.seed = setup.seed;
  config.server_window = setup.server_window;
  config.cs_window = setup.cs_window;
  const Identity user(setup.user), server(setup.server);
  const Password pw{setup.password};
  if (setup.protocol == Protocol::Li) {
    auto net = std::make_unique<LiDeployment>(config, secrets_for(setup.seed));
    net->register_server(server);
    net->register_user(user, pw);
    return net;
  }
  auto net = std::make_unique<DpiDeployment>(config, dpi::CsRegistry(secrets_for(setup.seed)));
  net->register_server(server);
  net->register_user(user, pw);
  return net;
}

}  // namespace testing_world
