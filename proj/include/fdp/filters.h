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

#ifndef FDP_FILTERS_H_
#define FDP_FILTERS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/compose.h"
#include "fdp/density_pair.h"
#include "fdp/profiles.h"

namespace fdp {

// Stopping decisions over realized privacy parameters. Every filter continues
// when its inequality holds with equality.

struct FilterDecision {
  enum class Kind { kContinue, kHalt };
  Kind kind;
  // Slack of the governing inequality; negative when it is violated.
  double margin;

  bool proceed() const { return kind == Kind::kContinue; }
};

const char* FilterKindName(FilterDecision::Kind kind);

struct FilterOptions {
  // Profile comparisons accept H_composed <= H_B + tol, absorbing the
  // discretization error of the tensor products.
  double tol = 1e-5;
};

// Continue iff H_1 (x) ... (x) H_t <= H_B on the budget's grid; margin is the
// minimum of H_B - H_composed over the grid.
absl::StatusOr<FilterDecision> FdpFilter(const PrivacyProfile& budget,
                                         std::span<const DensityPair> realized,
                                         const FilterOptions& options = {});

// Same, for an already composed profile.
absl::StatusOr<FilterDecision> FdpFilter(const PrivacyProfile& budget,
                                         const PrivacyProfile& composed,
                                         const FilterOptions& options = {});

// Continue iff sum mu_i^2 <= mu_budget^2; margin mu_budget^2 - sum mu_i^2.
FilterDecision GdpFilter(double mu_budget, std::span<const double> mus);

// Continue iff the summed Renyi epsilons at one order stay within the budget.
FilterDecision RdpFilter(double order, double epsilon_budget,
                         std::span<const double> realized_rdp);

// Orders accounted simultaneously: continue while at least one order is
// within its budget. realized[t][k] is step t's Renyi epsilon at orders[k].
// The margin is the largest per-order slack.
absl::StatusOr<FilterDecision> RdpFilterMultiOrder(
    std::span<const double> orders, std::span<const double> budgets,
    const std::vector<std::vector<double>>& realized);

// The fixed order grid {1.5, 2, 3, ..., 64}.
const std::vector<double>& DefaultRdpOrders();

// epsilon = rdp + ln(1 / delta) / (order - 1).
double RdpToDp(double order, double rdp_epsilon, double delta);

// epsilon = rdp + ln((order - 1) / order) - (ln delta + ln order) /
// (order - 1), a tighter conversion valid for the same pair.
double RdpToDpImproved(double order, double rdp_epsilon, double delta);

enum class RdpConversion { kClassic, kImproved };

struct RdpEpsilon {
  double epsilon;
  double order;
};

// Minimum over the orders of the converted epsilon.
absl::StatusOr<RdpEpsilon> BestRdpToDp(std::span<const double> orders,
                                       std::span<const double> rdp_epsilons,
                                       double delta,
                                       RdpConversion conversion);

}  // namespace fdp

#endif  // FDP_FILTERS_H_
