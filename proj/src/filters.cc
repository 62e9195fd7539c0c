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

#include "fdp/filters.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace fdp {
namespace {

FilterDecision Decide(double margin, double tol) {
  return FilterDecision{margin >= -tol ? FilterDecision::Kind::kContinue
                                       : FilterDecision::Kind::kHalt,
                        margin};
}

}  // namespace

const char* FilterKindName(FilterDecision::Kind kind) {
  return kind == FilterDecision::Kind::kContinue ? "CONTINUE" : "HALT";
}

absl::StatusOr<FilterDecision> FdpFilter(const PrivacyProfile& budget,
                                         std::span<const DensityPair> realized,
                                         const FilterOptions& options) {
  absl::StatusOr<PrivacyProfile> composed =
      ComposeProfile(realized, budget.grid_ptr());
  if (!composed.ok()) return composed.status();
  return FdpFilter(budget, *composed, options);
}

absl::StatusOr<FilterDecision> FdpFilter(const PrivacyProfile& budget,
                                         const PrivacyProfile& composed,
                                         const FilterOptions& options) {
  if (!budget.grid().SameAs(composed.grid())) {
    return absl::InvalidArgumentError(
        "budget and composed profile must share a gamma grid");
  }
  double margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < budget.size(); ++i) {
    margin = std::min(margin, budget.excess(i) - composed.excess(i));
  }
  return Decide(margin, options.tol);
}

FilterDecision GdpFilter(double mu_budget, std::span<const double> mus) {
  double total = 0.0;
  for (double mu : mus) total += mu * mu;
  return Decide(mu_budget * mu_budget - total, 0.0);
}

FilterDecision RdpFilter(double /*order*/, double epsilon_budget,
                         std::span<const double> realized_rdp) {
  double total = 0.0;
  for (double e : realized_rdp) total += e;
  return Decide(epsilon_budget - total, 0.0);
}

absl::StatusOr<FilterDecision> RdpFilterMultiOrder(
    std::span<const double> orders, std::span<const double> budgets,
    const std::vector<std::vector<double>>& realized) {
  if (orders.empty() || orders.size() != budgets.size()) {
    return absl::InvalidArgumentError(
        "need one budget per order and at least one order");
  }
  std::vector<double> totals(orders.size(), 0.0);
  for (const std::vector<double>& step : realized) {
    if (step.size() != orders.size()) {
      return absl::InvalidArgumentError(
          "every step needs one Renyi epsilon per order");
    }
    for (size_t k = 0; k < orders.size(); ++k) totals[k] += step[k];
  }
  double margin = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < orders.size(); ++k) {
    margin = std::max(margin, budgets[k] - totals[k]);
  }
  return Decide(margin, 0.0);
}

const std::vector<double>& DefaultRdpOrders() {
  static const std::vector<double>* const kOrders = [] {
    auto* v = new std::vector<double>{1.5};
    for (int a = 2; a <= 64; ++a) v->push_back(a);
    return v;
  }();
  return *kOrders;
}

double RdpToDp(double order, double rdp_epsilon, double delta) {
  return rdp_epsilon + std::log(1.0 / delta) / (order - 1.0);
}

double RdpToDpImproved(double order, double rdp_epsilon, double delta) {
  return rdp_epsilon + std::log((order - 1.0) / order) -
         (std::log(delta) + std::log(order)) / (order - 1.0);
}

absl::StatusOr<RdpEpsilon> BestRdpToDp(std::span<const double> orders,
                                       std::span<const double> rdp_epsilons,
                                       double delta,
                                       RdpConversion conversion) {
  if (orders.empty() || orders.size() != rdp_epsilons.size()) {
    return absl::InvalidArgumentError(
        "need one Renyi epsilon per order and at least one order");
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1], got %g", delta));
  }
  RdpEpsilon best{std::numeric_limits<double>::infinity(), orders[0]};
  for (size_t k = 0; k < orders.size(); ++k) {
    if (!(orders[k] > 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("orders must exceed 1, got %g", orders[k]));
    }
    const double eps = conversion == RdpConversion::kClassic
                           ? RdpToDp(orders[k], rdp_epsilons[k], delta)
                           : RdpToDpImproved(orders[k], rdp_epsilons[k], delta);
    if (eps < best.epsilon) best = RdpEpsilon{eps, orders[k]};
  }
  best.epsilon = std::max(0.0, best.epsilon);
  return best;
}

}  // namespace fdp
