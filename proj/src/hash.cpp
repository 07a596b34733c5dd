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

#include "akalab/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "akalab/errors.hpp"
#include "akalab/meter.hpp"

namespace akalab {
namespace {

thread_local HashFunction g_hash = &sha256;

}  // namespace

FieldElement sha256(ByteView data) {
  std::array<std::uint8_t, FieldElement::kSize> digest{};
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1 ||
      len != digest.size()) {
    throw Error("SHA-256 computation failed");
  }
  return FieldElement(digest);
}

FieldElement hash(ByteView data) {
  detail::record_hash();
  return g_hash(data);
}

HashOverride::HashOverride(HashFunction fn) : previous_(g_hash) { g_hash = fn; }
HashOverride::~HashOverride() { g_hash = previous_; }

}  // namespace akalab
