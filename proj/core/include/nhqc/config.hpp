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

#ifndef NHQC_CONFIG_HPP
#define NHQC_CONFIG_HPP

// Flat experiment manifests:
//
//   # comment
//   key = value        (whitespace around key and value is trimmed)
//
// Keys are [A-Za-z0-9_-]+, '-' and '_' are interchangeable, and a key may
// appear at most once. Values run to the end of the line; a '#' after the
// value starts a trailing comment.

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nhqc {

class KeyValueConfig {
 public:
  /// Throws ConfigError with the line number on malformed input.
  static KeyValueConfig parse(std::istream& in, std::string_view source = "<input>");
  /// Throws std::ios_base::failure if the file cannot be opened.
  static KeyValueConfig load(const std::string& path);

  bool contains(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_int(std::string_view key) const;
  /// Accepts true/false, on/off, yes/no, 1/0.
  std::optional<bool> get_bool(std::string_view key) const;

  void set(std::string_view key, std::string value);
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Keys not in `known`, in sorted order.
  std::vector<std::string> unknown_keys(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> entries_;
};

std::string normalize_key(std::string_view key);

/// A single value "x" or an inclusive linear range "start:stop:count".
/// Throws ConfigError on malformed text or count < 1.
std::vector<double> parse_axis(std::string_view text);

/// Strict full-string numeric parses; throw ConfigError.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

}  // namespace nhqc

#endif  // NHQC_CONFIG_HPP
