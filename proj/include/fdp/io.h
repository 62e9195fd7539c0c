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

#ifndef FDP_IO_H_
#define FDP_IO_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/curves.h"
#include "fdp/grid.h"
#include "fdp/profiles.h"

namespace fdp {

// Full round-trip precision for doubles.
inline constexpr int kFullPrecision = 17;
// Precision of the command-line outputs.
inline constexpr int kCliPrecision = 12;

// %.{digits}g.
std::string FormatNumber(double x, int digits = kFullPrecision);

// A numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string WriteCsv(const Table& table, int digits = kFullPrecision);
absl::StatusOr<Table> ParseCsv(const std::string& text);

// "alpha,value".
std::string CurveToCsv(const TradeoffCurve& f, int digits = kFullPrecision);
absl::StatusOr<TradeoffCurve> CurveFromCsv(const std::string& text);
// {"alpha": [...], "value": [...]}.
std::string CurveToJson(const TradeoffCurve& f);
absl::StatusOr<TradeoffCurve> CurveFromJson(const std::string& text);

// "gamma,H".
std::string ProfileToCsv(const PrivacyProfile& h, int digits = kFullPrecision);
// The gamma column must match the grid to the printed precision.
absl::StatusOr<PrivacyProfile> ProfileFromCsv(
    const std::string& text,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());
// {"gamma": [...], "H": [...]}.
std::string ProfileToJson(const PrivacyProfile& h);
absl::StatusOr<PrivacyProfile> ProfileFromJson(
    const std::string& text,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

// "epsilon,delta" at the given epsilons (each within the grid's range).
absl::StatusOr<std::string> EpsilonDeltaCsv(const PrivacyProfile& h,
                                            const std::vector<double>& epsilons,
                                            int digits = kFullPrecision);

absl::Status WriteFile(const std::string& path, const std::string& content);
absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace fdp

#endif  // FDP_IO_H_
