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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
  });
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string normalize_key(std::string_view key) {
  std::string out = lower(trim(key));
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string_view source) {
  KeyValueConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << source << ":" << lineno << ": " << msg;
    throw ConfigError(os.str());
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string_view raw_key = trim(body.substr(0, eq));
    std::string_view value = body.substr(eq + 1);
    if (const auto hash = value.find('#'); hash != std::string_view::npos) value = value.substr(0, hash);
    value = trim(value);
    if (!valid_key(raw_key)) fail("invalid key '" + std::string(raw_key) + "'");
    if (value.empty()) fail("empty value for '" + std::string(raw_key) + "'");
    const std::string key = normalize_key(raw_key);
    if (cfg.entries_.count(key) != 0) fail("duplicate key '" + key + "'");
    cfg.entries_.emplace(key, std::string(value));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  return parse(in, path);
}

bool KeyValueConfig::contains(std::string_view key) const { return entries_.count(normalize_key(key)) != 0; }

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = entries_.find(normalize_key(key));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return parse_double(*v, key);
}

std::optional<long long> KeyValueConfig::get_int(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  return parse_int(*v, key);
}

std::optional<bool> KeyValueConfig::get_bool(std::string_view key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  const std::string s = lower(*v);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw ConfigError("'" + std::string(key) + "' expects a boolean, got '" + *v + "'");
}

void KeyValueConfig::set(std::string_view key, std::string value) { entries_[normalize_key(key)] = std::move(value); }

std::vector<std::string> KeyValueConfig::unknown_keys(const std::vector<std::string>& known) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (std::none_of(known.begin(), known.end(), [&](const std::string& x) { return normalize_key(x) == k; })) {
      out.push_back(k);
    }
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(what) + "' expects a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("'" + std::string(what) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_axis(std::string_view text) {
  const std::string_view s = trim(text);
  const auto c1 = s.find(':');
  if (c1 == std::string_view::npos) return {parse_double(s, "axis value")};
  const auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string_view::npos || s.find(':', c2 + 1) != std::string_view::npos) {
    throw ConfigError("axis '" + std::string(text) + "' must be a value or start:stop:count");
  }
  const double start = parse_double(s.substr(0, c1), "axis start");
  const double stop = parse_double(s.substr(c1 + 1, c2 - c1 - 1), "axis stop");
  const long long count = parse_int(s.substr(c2 + 1), "axis count");
  if (count < 1) throw ConfigError("axis count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    // Endpoints exact; interior points by the symmetric formula to avoid drift.
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    out[static_cast<std::size_t>(i)] = (i == count - 1) ? stop : start * (1.0 - f) + stop * f;
  }
  return out;
}

}  // namespace nhqc
