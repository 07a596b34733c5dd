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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace akalab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Identity/password encodings that do not fit the fixed-width block.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// An operation was called on a session state that has not reached accept.
class StateError : public Error {
 public:
  using Error::Error;
};

class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Malformed persisted data or wire bytes. `position` is a byte offset for
// binary formats and a 1-based line number for line-oriented ones.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace akalab
