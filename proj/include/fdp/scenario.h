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

#ifndef FDP_SCENARIO_H_
#define FDP_SCENARIO_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/config.h"
#include "fdp/filters.h"
#include "fdp/plrv.h"

namespace fdp {

// Noise schedule sigma_t for t = 1..T. Text forms:
//   constant(s)            sigma_t = s
//   sin_block(s, b)        sigma_t = s + sin(pi / T * b * ceil(t / b))
// A bare number is a constant schedule.
class SigmaSchedule {
 public:
  static absl::StatusOr<SigmaSchedule> Parse(const std::string& text);
  static SigmaSchedule Constant(double sigma);
  static SigmaSchedule SinBlock(double base, int block);

  double At(int t, int horizon) const;
  std::vector<double> Values(int horizon) const;
  std::string ToString() const;

 private:
  enum class Kind { kConstant, kSinBlock };
  SigmaSchedule(Kind kind, double base, int block)
      : kind_(kind), base_(base), block_(block) {}

  Kind kind_;
  double base_;
  int block_;
};

enum class GradientKind { kConstantNorm, kDecayingNorm, kRandomDirection };

absl::StatusOr<GradientKind> ParseGradientKind(const std::string& text);
const char* GradientKindName(GradientKind kind);

struct GradientSourceConfig {
  GradientKind kind = GradientKind::kConstantNorm;
  int dimension = 4;
  // Norm at t = 1, in units of the clip bound.
  double norm = 2.0;
  // Per-step multiplicative decay of the norm for kDecayingNorm.
  double decay = 0.999;
};

// When the GDP filter deducts the cost of step t: at the start of step t + 1 as
// written (lazy), or right after releasing step t (eager).
enum class DeductionMode { kLazy, kEager };

enum class AccountantKind { kGdpFilter, kIndividual };

struct ComparisonConfig {
  Regime regime = Regime::kSmallQ;
  // Negative means "auto": the sum of per-step deductions over the schedule.
  double budget = -1.0;
  int horizon = 3650;
  double q = 0.01;
  // Upper bound on q (regime 0) or lower bound (regime 1) and the noise floor.
  double q_bar = 0.1;
  double sigma_bar = 0.1;
  SigmaSchedule sigma = SigmaSchedule::SinBlock(1.5, 150);
  double clip = 1.0;
  uint64_t seed = 0;
  std::vector<double> delta_grid;
  RdpConversion rdp_conversion = RdpConversion::kImproved;
  int dataset_size = 1000;
  GradientSourceConfig gradients;
  // Constant of the CLT certificate.
  double clt_constant = 1.0;
  DeductionMode deduction = DeductionMode::kLazy;
  // Used by accountant-run only.
  AccountantKind accountant = AccountantKind::kGdpFilter;
};

// Keys accepted in a comparison scenario file.
const std::set<std::string>& ComparisonConfigKeys();

absl::StatusOr<ComparisonConfig> ComparisonConfigFromConfig(const Config& c);

}  // namespace fdp

#endif  // FDP_SCENARIO_H_
