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

#include "akalab/rng.hpp"

namespace akalab {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

FieldElement random_field(Rng& rng) {
  std::array<std::uint8_t, FieldElement::kSize> raw{};
  for (std::size_t i = 0; i < raw.size(); i += 8) {
    const std::uint64_t word = rng.next_u64();
    for (std::size_t k = 0; k < 8; ++k) {
      raw[i + k] = static_cast<std::uint8_t>(word >> (8 * (7 - k)));
    }
  }
  return FieldElement(raw);
}

}  // namespace akalab
