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

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "iadmit/error.hpp"

namespace iadmit {

// Exact rational arithmetic. All payoffs, probabilities and LP data use this.
using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with decimal digits and q != 0. The result is
// canonicalized (lowest terms, positive denominator).
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw ParseError("invalid rational '" + std::string(text) + "'");
  }
  if (den.find_first_not_of('0') == std::string_view::npos) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  std::string normalized(text);
  if (!normalized.empty() && normalized.front() == '+') normalized.erase(0, 1);
  Rational value(normalized, 10);
  value.canonicalize();
  return value;
}

inline std::string to_string(const Rational& value) { return value.get_str(); }

// mpq_class(num, den) does not reduce; comparisons need canonical values.
inline Rational canonical(Rational value) {
  value.canonicalize();
  return value;
}

}  // namespace iadmit
