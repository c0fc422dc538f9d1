// Copyright 2026 The nhqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nhqc/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc {
namespace {

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in);
}

TEST(KeyValueConfig, Grammar) {
  const KeyValueConfig c = parse(
      "# comment\n"
      "\n"
      "  Gate = hadamard   # trailing\n"
      "tau-us=0.25\n"
      "steps = 4000\n"
      "cp = off\n");
  EXPECT_EQ(c.get("gate"), "hadamard");
  EXPECT_EQ(c.get_double("tau_us"), 0.25);
  EXPECT_EQ(c.get_double("TAU-US"), 0.25);
  EXPECT_EQ(c.get_int("steps"), 4000);
  EXPECT_EQ(c.get_bool("cp"), false);
  EXPECT_FALSE(c.get("eps").has_value());
  EXPECT_EQ(c.entries().size(), 4u);
}

TEST(KeyValueConfig, Booleans) {
  for (const char* t : {"true", "on", "yes", "1"}) EXPECT_EQ(parse(std::string("x=") + t).get_bool("x"), true) << t;
  for (const char* f : {"false", "off", "no", "0"}) EXPECT_EQ(parse(std::string("x=") + f).get_bool("x"), false) << f;
  EXPECT_THROW(parse("x=maybe").get_bool("x"), ConfigError);
}

TEST(KeyValueConfig, Errors) {
  EXPECT_THROW(parse("novalue\n"), ConfigError);
  EXPECT_THROW(parse("a=1\na=2\n"), ConfigError);
  EXPECT_THROW(parse("a=\n"), ConfigError);
  EXPECT_THROW(parse("=1\n"), ConfigError);
  EXPECT_THROW(parse("steps=1.5").get_int("steps"), ConfigError);
  EXPECT_THROW(parse("tau=abc").get_double("tau"), ConfigError);
  try {
    parse("a=1\n\nbroken\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
}

TEST(KeyValueConfig, UnknownKeysAndOverrides) {
  KeyValueConfig c = parse("gate=s\nbogus=1\nalso=2\n");
  EXPECT_EQ(c.unknown_keys({"gate"}), (std::vector<std::string>{"also", "bogus"}));
  c.set("Gate", "t");
  EXPECT_EQ(c.get("gate"), "t");
}

TEST(KeyValueConfig, MissingFile) {
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/dir/x.cfg"), std::ios_base::failure);
}

TEST(ParseAxis, ScalarAndRange) {
  EXPECT_EQ(parse_axis("0.5"), std::vector<double>{0.5});
  EXPECT_EQ(parse_axis("1:2:1"), std::vector<double>{1.0});
  const std::vector<double> ax = parse_axis("-0.2:0.2:5");
  ASSERT_EQ(ax.size(), 5u);
  EXPECT_DOUBLE_EQ(ax[0], -0.2);
  EXPECT_NEAR(ax[2], 0.0, 1e-17);
  EXPECT_EQ(ax[4], 0.2);  // endpoint is exact
}

TEST(ParseAxis, Errors) {
  EXPECT_THROW(parse_axis(""), ConfigError);
  EXPECT_THROW(parse_axis("1:2"), ConfigError);
  EXPECT_THROW(parse_axis("1:2:0"), ConfigError);
  EXPECT_THROW(parse_axis("1:2:x"), ConfigError);
  EXPECT_THROW(parse_axis("nan"), ConfigError);
}

TEST(ParseNumbers, Strict) {
  EXPECT_EQ(parse_double(" 1e-3 ", "x"), 1e-3);
  EXPECT_THROW(parse_double("1.0abc", "x"), ConfigError);
  EXPECT_EQ(parse_int("42", "x"), 42);
  EXPECT_THROW(parse_int("4 2", "x"), ConfigError);
}

}  // namespace
}  // namespace nhqc
