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

#include "akalab/bytes.hpp"

namespace akalab {

/// The protocol hash h(.): SHA-256. Each call is reported to the active
/// HashMeter, if any.
FieldElement hash(ByteView data);

/// h(a || b || ...) over canonical encodings.
template <typename... Parts>
FieldElement hash_of(const Parts&... parts) {
  return hash(concat(parts...));
}

using HashFunction = FieldElement (*)(ByteView);

FieldElement sha256(ByteView data);

/// Replaces the hash used by hash() on this thread while alive. Metering is
/// unaffected.
class HashOverride {
 public:
  explicit HashOverride(HashFunction fn);
  ~HashOverride();
  HashOverride(const HashOverride&) = delete;
  HashOverride& operator=(const HashOverride&) = delete;

 private:
  HashFunction previous_;
};

}  // namespace akalab
