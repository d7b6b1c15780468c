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

#include <gtest/gtest.h>

#include "iadmit/error.hpp"
#include "iadmit/rational.hpp"

namespace iadmit {
namespace {

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-4/2"), Rational(-2));
  EXPECT_EQ(parse_rational("+7"), Rational(7));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_EQ(to_string(Rational(-3)), "-3");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1.5", "abc", "1/", "/2", "--1", "1 /2", "2/-3"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(Rational, CanonicalizesTwoArgumentValues) {
  EXPECT_EQ(canonical(Rational(2, 2)), Rational(1));
  EXPECT_EQ(to_string(canonical(Rational(-6, 4))), "-3/2");
}

TEST(Rational, ExactArithmetic) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_LT(Rational(1, 3), Rational(334, 1000));
}

}  // namespace
}  // namespace iadmit
