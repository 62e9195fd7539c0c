//
// Copyright 2026 The fdp Authors.
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
//

#include "fdp/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "absl/strings/string_view.h"
#include "absl/strings/str_join.h"

namespace fdp {

absl::StatusOr<double> ParseDouble(const std::string& text) {
  double v = 0.0;
  if (!absl::SimpleAtod(absl::StripAsciiWhitespace(text), &v)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("not a number: '%s'", text));
  }
  return v;
}

absl::StatusOr<std::vector<double>> ParseNumberList(const std::string& text) {
  absl::string_view s = absl::StripAsciiWhitespace(text);
  std::vector<double> out;
  if (absl::ConsumePrefix(&s, "logspace(")) {
    if (!absl::ConsumeSuffix(&s, ")")) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unterminated logspace in '%s'", text));
    }
    std::vector<std::string> parts = absl::StrSplit(s, ',');
    if (parts.size() != 3) {
      return absl::InvalidArgumentError("logspace takes (lo, hi, n)");
    }
    absl::StatusOr<double> lo = ParseDouble(parts[0]);
    absl::StatusOr<double> hi = ParseDouble(parts[1]);
    absl::StatusOr<double> n = ParseDouble(parts[2]);
    if (!lo.ok() || !hi.ok() || !n.ok() || !(*lo > 0.0) || !(*hi >= *lo) ||
        !(*n >= 1.0) || *n != std::floor(*n)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "logspace needs 0 < lo <= hi and an integer n >= 1: '%s'", text));
    }
    const int count = static_cast<int>(*n);
    for (int i = 0; i < count; ++i) {
      const double w = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out.push_back(std::exp((1.0 - w) * std::log(*lo) + w * std::log(*hi)));
    }
    out.front() = *lo;
    out.back() = count == 1 ? *lo : *hi;
    return out;
  }
  if (s.empty()) return out;
  for (absl::string_view part : absl::StrSplit(s, ',')) {
    absl::StatusOr<double> v = ParseDouble(std::string(part));
    if (!v.ok()) return v.status();
    out.push_back(*v);
  }
  return out;
}

absl::StatusOr<Config> Config::Parse(const std::string& text,
                                     const std::set<std::string>& allowed) {
  Config c;
  c.allowed_ = allowed;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    absl::string_view view = line;
    const size_t hash = view.find('#');
    if (hash != absl::string_view::npos) view = view.substr(0, hash);
    view = absl::StripAsciiWhitespace(view);
    if (view.empty()) continue;
    const size_t eq = view.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected key = value", line_no));
    }
    const std::string key(absl::StripAsciiWhitespace(view.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(view.substr(eq + 1)));
    if (!allowed.count(key)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: unknown key '%s' (allowed: %s)", line_no, key,
          absl::StrJoin(allowed, ", ")));
    }
    if (c.values_.count(key)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: duplicate key '%s'", line_no, key));
    }
    c.values_[key] = value;
  }
  return c;
}

absl::StatusOr<Config> Config::ParseFile(const std::string& path,
                                         const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrFormat("cannot read '%s'", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Config> c = Parse(buffer.str(), allowed);
  if (!c.ok()) {
    return absl::Status(c.status().code(),
                        absl::StrFormat("%s: %s", path, c.status().message()));
  }
  return c;
}

absl::Status Config::Set(const std::string& key, const std::string& value) {
  if (!allowed_.count(key)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("unknown key '%s'", key));
  }
  values_[key] = value;
  return absl::OkStatus();
}

absl::StatusOr<std::string> Config::GetString(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    return absl::NotFoundError(absl::StrFormat("missing key '%s'", key));
  }
  return it->second;
}

absl::StatusOr<double> Config::GetDouble(const std::string& key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  absl::StatusOr<double> v = ParseDouble(*s);
  if (!v.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("key '%s': %s", key, v.status().message()));
  }
  return v;
}

absl::StatusOr<int64_t> Config::GetInt(const std::string& key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  int64_t v = 0;
  if (!absl::SimpleAtoi(*s, &v)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("key '%s': not an integer: '%s'", key, *s));
  }
  return v;
}

absl::StatusOr<uint64_t> Config::GetUint(const std::string& key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  uint64_t v = 0;
  if (!absl::SimpleAtoi(*s, &v)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "key '%s': not a non-negative integer: '%s'", key, *s));
  }
  return v;
}

absl::StatusOr<std::vector<double>> Config::GetDoubleList(
    const std::string& key) const {
  absl::StatusOr<std::string> s = GetString(key);
  if (!s.ok()) return s.status();
  absl::StatusOr<std::vector<double>> v = ParseNumberList(*s);
  if (!v.ok()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("key '%s': %s", key, v.status().message()));
  }
  return v;
}

}  // namespace fdp
