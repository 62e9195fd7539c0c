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

#include "fdp/counterexample.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace fdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Differences below this are treated as ties when scanning for crossings.
constexpr double kTieTol = 1e-9;

absl::Status CheckBranch(int branch) {
  if (branch != 1 && branch != 2) {
    return absl::InvalidArgumentError(
        absl::StrFormat("branch must be 1 or 2, got %d", branch));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Counterexample> Counterexample::Build(
    const CounterexampleParams& params, std::shared_ptr<const GammaGrid> grid) {
  if (params.split == SplitRule::kLiteralThreshold &&
      !std::isfinite(params.threshold_y)) {
    return absl::InvalidArgumentError("threshold_y must be finite");
  }
  absl::StatusOr<DensityPair> first =
      DensityPair::Mixture(params.q, params.mu1, params.sigma);
  if (!first.ok()) return first.status();
  const double mu2[2] = {params.branch1_mu2, params.branch2_mu2};
  const double mu3[2] = {params.branch1_mu3, params.branch2_mu3};
  std::vector<DensityPair> middle;
  std::vector<PrivacyProfile> last_profiles;
  std::vector<PrivacyProfile> tails;
  for (int i = 0; i < 2; ++i) {
    absl::StatusOr<DensityPair> m =
        DensityPair::Mixture(params.q, mu2[i], params.sigma);
    if (!m.ok()) return m.status();
    absl::StatusOr<DensityPair> l =
        DensityPair::Mixture(params.q, mu3[i], params.sigma);
    if (!l.ok()) return l.status();
    absl::StatusOr<PrivacyProfile> h3 = ProfileFromPair(*l, grid);
    if (!h3.ok()) return h3.status();
    absl::StatusOr<PrivacyProfile> h23 = TensorProfiles(*m, *h3);
    if (!h23.ok()) return h23.status();
    middle.push_back(*m);
    last_profiles.push_back(*std::move(h3));
    tails.push_back(*std::move(h23));
  }
  return Counterexample(params, *first, std::move(middle),
                        std::move(last_profiles), std::move(tails));
}

const PrivacyProfile& Counterexample::BranchTail(int branch) const {
  return tails_[branch == 2 ? 1 : 0];
}

absl::StatusOr<double> Counterexample::BranchTailAt(int branch,
                                                    double gamma) const {
  if (absl::Status s = CheckBranch(branch); !s.ok()) return s;
  const size_t i = branch - 1;
  return TensorProfileAt(middle_[i], last_profiles_[i], gamma);
}

absl::StatusOr<std::vector<double>> Counterexample::Crossings() const {
  const PrivacyProfile& h1 = tails_[0];
  const PrivacyProfile& h2 = tails_[1];
  const GammaGrid& grid = h1.grid();
  auto diff = [&](double gamma) -> absl::StatusOr<double> {
    absl::StatusOr<double> a = BranchTailAt(1, gamma);
    if (!a.ok()) return a.status();
    absl::StatusOr<double> b = BranchTailAt(2, gamma);
    if (!b.ok()) return b.status();
    return *a - *b;
  };
  std::vector<double> out;
  int prev_sign = 0;
  size_t prev_index = 0;
  for (size_t k = grid.OneIndex(); k < grid.size(); ++k) {
    const double d = h1.excess(k) - h2.excess(k);
    if (std::abs(d) <= kTieTol) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) {
      double lo = grid.gamma(prev_index);
      double hi = grid.gamma(k);
      for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        absl::StatusOr<double> dm = diff(mid);
        if (!dm.ok()) return dm.status();
        if ((*dm > 0.0 ? 1 : -1) == prev_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_sign = sign;
    prev_index = k;
  }
  return out;
}

absl::StatusOr<double> Counterexample::Gamma0() const {
  absl::StatusOr<std::vector<double>> c = Crossings();
  if (!c.ok()) return c.status();
  if (c->empty()) {
    return absl::NotFoundError(
        "the two branch profiles do not cross for gamma >= 1");
  }
  return c->front();
}

absl::StatusOr<PrivacyProfile> Counterexample::BranchProfile(int branch) const {
  if (absl::Status s = CheckBranch(branch); !s.ok()) return s;
  return TensorProfiles(first_, tails_[branch - 1]);
}

absl::StatusOr<PrivacyProfile> Counterexample::BudgetTightProfile() const {
  absl::StatusOr<PrivacyProfile> a = BranchProfile(1);
  if (!a.ok()) return a.status();
  absl::StatusOr<PrivacyProfile> b = BranchProfile(2);
  if (!b.ok()) return b.status();
  return MaxProfile(*a, *b);
}

absl::StatusOr<double> Counterexample::BudgetTightAt(double gamma) const {
  double best = 0.0;
  for (const PrivacyProfile& tail : tails_) {
    absl::StatusOr<double> v = TensorProfileAt(first_, tail, gamma);
    if (!v.ok()) return v.status();
    best = std::max(best, *v);
  }
  return best;
}

absl::StatusOr<double> Counterexample::AdaptiveAt(double gamma) const {
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    absl::StatusOr<double> v =
        RestrictedTensorAt(first_, tails_[i], gamma, BranchRegion(i + 1));
    if (!v.ok()) return v.status();
    total += *v;
  }
  return std::min(1.0, total);
}

absl::StatusOr<PrivacyProfile> Counterexample::AdaptiveProfile() const {
  const GammaGrid& grid = tails_[0].grid();
  std::vector<double> excess(grid.size(), 0.0);
  for (int i = 0; i < 2; ++i) {
    absl::StatusOr<std::vector<double>> v =
        RestrictedTensorValues(first_, tails_[i], BranchRegion(i + 1));
    if (!v.ok()) return v.status();
    for (size_t k = 0; k < grid.size(); ++k) excess[k] += (*v)[k];
  }
  for (size_t k = 0; k < grid.size(); ++k) {
    const double g = grid.gamma(k);
    excess[k] -= g < 1.0 ? 1.0 - g : 0.0;
  }
  PrivacyProfile out =
      PrivacyProfile::FromExcess(tails_[0].grid_ptr(), std::move(excess));
  if (out.TailExcess() > kTailTol) {
    return absl::OutOfRangeError(absl::StrFormat(
        "gamma grid too short: adaptive profile is %.3g at gamma_max",
        out.TailExcess()));
  }
  return out;
}

PlrvRange Counterexample::BranchRegion(int branch) const {
  double cut = 0.0;
  if (params_.split == SplitRule::kLiteralThreshold) {
    cut = first_.Plrv(params_.threshold_y);
    // Branch 1 lies below the threshold.
    return branch == 1 ? PlrvRange{-kInf, cut} : PlrvRange{cut, kInf};
  }
  // Branch 1 where the first output is at least as likely under P1 as under Q1.
  return branch == 1 ? PlrvRange{cut, kInf} : PlrvRange{-kInf, cut};
}

absl::StatusOr<double> AdaptiveProfileExample(
    double gamma, const CounterexampleParams& params) {
  absl::StatusOr<Counterexample> ce = Counterexample::Build(params);
  if (!ce.ok()) return ce.status();
  return ce->AdaptiveAt(gamma);
}

}  // namespace fdp
