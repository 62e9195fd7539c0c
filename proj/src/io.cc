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

#include "fdp/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "fdp/config.h"
#include "json.hpp"

namespace fdp {
namespace {

absl::StatusOr<std::vector<double>> Column(const Table& t,
                                           const std::string& name) {
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const std::vector<double>& row : t.rows) out.push_back(row[c]);
    return out;
  }
  return absl::InvalidArgumentError(
      absl::StrFormat("missing column '%s'", name));
}

absl::StatusOr<PrivacyProfile> ProfileFromSamples(
    const std::vector<double>& gamma, const std::vector<double>& h,
    std::shared_ptr<const GammaGrid> grid) {
  if (gamma.size() != grid->size() || h.size() != grid->size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "profile has %d points, the grid %d", gamma.size(), grid->size()));
  }
  for (size_t i = 0; i < gamma.size(); ++i) {
    const double g = grid->gamma(i);
    if (std::abs(gamma[i] - g) > 1e-11 * std::max(1.0, g)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "gamma %.17g at row %d does not match the grid value %.17g",
          gamma[i], i, g));
    }
  }
  // Printed values carry rounding of about 1e-12.
  return PrivacyProfile::Create(std::move(grid), h, 1e-9);
}

}  // namespace

std::string FormatNumber(double x, int digits) {
  return absl::StrFormat("%.*g", digits, x);
}

std::string WriteCsv(const Table& table, int digits) {
  std::string out = absl::StrJoin(table.columns, ",");
  out += "\n";
  for (const std::vector<double>& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ",";
      out += FormatNumber(row[c], digits);
    }
    out += "\n";
  }
  return out;
}

absl::StatusOr<Table> ParseCsv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<std::string> cells = absl::StrSplit(line, ',');
    if (t.columns.empty()) {
      for (std::string& c : cells) {
        t.columns.emplace_back(absl::StripAsciiWhitespace(c));
      }
      continue;
    }
    if (cells.size() != t.columns.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d has %d cells, expected %d", line_no, cells.size(),
          t.columns.size()));
    }
    std::vector<double> row;
    for (const std::string& c : cells) {
      absl::StatusOr<double> v = ParseDouble(c);
      if (!v.ok()) {
        return absl::InvalidArgumentError(
            absl::StrFormat("line %d: %s", line_no, v.status().message()));
      }
      row.push_back(*v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) return absl::InvalidArgumentError("empty CSV");
  return t;
}

std::string CurveToCsv(const TradeoffCurve& f, int digits) {
  Table t{{"alpha", "value"}, {}};
  for (size_t i = 0; i < f.size(); ++i) {
    t.rows.push_back({f.alpha()[i], f.values()[i]});
  }
  return WriteCsv(t, digits);
}

absl::StatusOr<TradeoffCurve> CurveFromCsv(const std::string& text) {
  absl::StatusOr<Table> t = ParseCsv(text);
  if (!t.ok()) return t.status();
  absl::StatusOr<std::vector<double>> a = Column(*t, "alpha");
  if (!a.ok()) return a.status();
  absl::StatusOr<std::vector<double>> v = Column(*t, "value");
  if (!v.ok()) return v.status();
  return TradeoffCurve::Create(*a, *v);
}

std::string CurveToJson(const TradeoffCurve& f) {
  nlohmann::json j;
  j["alpha"] = f.alpha();
  j["value"] = f.values();
  return j.dump();
}

absl::StatusOr<TradeoffCurve> CurveFromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("alpha") || !j.contains("value")) {
    return absl::InvalidArgumentError(
        "expected a JSON object with 'alpha' and 'value' arrays");
  }
  try {
    return TradeoffCurve::Create(j["alpha"].get<std::vector<double>>(),
                                 j["value"].get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

std::string ProfileToCsv(const PrivacyProfile& h, int digits) {
  Table t{{"gamma", "H"}, {}};
  for (size_t i = 0; i < h.size(); ++i) t.rows.push_back({h.gamma(i), h.value(i)});
  return WriteCsv(t, digits);
}

absl::StatusOr<PrivacyProfile> ProfileFromCsv(
    const std::string& text, std::shared_ptr<const GammaGrid> grid) {
  absl::StatusOr<Table> t = ParseCsv(text);
  if (!t.ok()) return t.status();
  absl::StatusOr<std::vector<double>> g = Column(*t, "gamma");
  if (!g.ok()) return g.status();
  absl::StatusOr<std::vector<double>> h = Column(*t, "H");
  if (!h.ok()) return h.status();
  return ProfileFromSamples(*g, *h, std::move(grid));
}

std::string ProfileToJson(const PrivacyProfile& h) {
  nlohmann::json j;
  j["gamma"] = h.grid().values();
  j["H"] = h.Values();
  return j.dump();
}

absl::StatusOr<PrivacyProfile> ProfileFromJson(
    const std::string& text, std::shared_ptr<const GammaGrid> grid) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("gamma") || !j.contains("H")) {
    return absl::InvalidArgumentError(
        "expected a JSON object with 'gamma' and 'H' arrays");
  }
  try {
    return ProfileFromSamples(j["gamma"].get<std::vector<double>>(),
                              j["H"].get<std::vector<double>>(),
                              std::move(grid));
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
}

absl::StatusOr<std::string> EpsilonDeltaCsv(const PrivacyProfile& h,
                                            const std::vector<double>& epsilons,
                                            int digits) {
  Table t{{"epsilon", "delta"}, {}};
  for (double eps : epsilons) {
    absl::StatusOr<double> d = EpsilonDelta(h, eps);
    if (!d.ok()) return d.status();
    t.rows.push_back({eps, *d});
  }
  return WriteCsv(t, digits);
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot write '%s'", path));
  }
  out << content;
  out.close();
  if (!out) {
    return absl::DataLossError(absl::StrFormat("error writing '%s'", path));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrFormat("cannot read '%s'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fdp
