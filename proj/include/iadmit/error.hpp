// Copyright 2026 The iadmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace iadmit {

// A request that is well-formed but refers to something the game or
// structure does not contain (unknown strategy, violated precondition).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input: game/structure JSON, rationals, formulas.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(position == npos
                               ? what
                               : what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

// Thrown by a diamond oracle that refuses a query.
class OracleRejection : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace iadmit
