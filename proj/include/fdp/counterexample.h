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

#ifndef FDP_COUNTEREXAMPLE_H_
#define FDP_COUNTEREXAMPLE_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/compose.h"
#include "fdp/density_pair.h"
#include "fdp/profiles.h"

namespace fdp {

// Three-step adaptive composition of subsampled Gaussian mechanisms in which
// the parameters of steps two and three depend on the first output.
//
// Step one releases from the pair (P1, Q1) = mixture(q, mu1, sigma). Branch 1
// then runs mixture(q, b1_mu2) and mixture(q, b1_mu3); branch 2 runs
// mixture(q, b2_mu2) and mixture(q, b2_mu3). Each branch on its own fits the
// budget H_B,tight = max over branches of (step 1 (x) branch); the adaptive
// choice of branch does not.

enum class SplitRule {
  // Branch 1 where q1(y) <= p1(y), i.e. L1(y) >= 0; branch 2 elsewhere.
  kLikelihoodRatio,
  // Branch 1 where y <= threshold_y; branch 2 elsewhere.
  kLiteralThreshold,
};

struct CounterexampleParams {
  double q = 0.5;
  double sigma = 1.0;
  double mu1 = 1.3;
  double branch1_mu2 = 2.25;
  double branch1_mu3 = 2.25;
  double branch2_mu2 = 0.1;
  double branch2_mu3 = 10.0;
  SplitRule split = SplitRule::kLikelihoodRatio;
  double threshold_y = 0.65;
};

class Counterexample {
 public:
  static absl::StatusOr<Counterexample> Build(
      const CounterexampleParams& params = {},
      std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

  const CounterexampleParams& params() const { return params_; }
  const DensityPair& first_pair() const { return first_; }

  // Profile of the last two steps of branch i (1 or 2), i.e. H_{2x3,i}.
  const PrivacyProfile& BranchTail(int branch) const;

  // Direct (grid-free) evaluation of BranchTail(branch) at gamma.
  absl::StatusOr<double> BranchTailAt(int branch, double gamma) const;

  // Calibration points gamma >= 1 where BranchTail(1) - BranchTail(2)
  // changes sign, each refined by bisection on direct evaluations.
  absl::StatusOr<std::vector<double>> Crossings() const;

  // The first entry of Crossings(); fails if there is none.
  absl::StatusOr<double> Gamma0() const;

  // Full three-step profile of branch i and the tight budget (their maximum).
  absl::StatusOr<PrivacyProfile> BranchProfile(int branch) const;
  absl::StatusOr<PrivacyProfile> BudgetTightProfile() const;
  absl::StatusOr<double> BudgetTightAt(double gamma) const;

  // Profile of the adaptive composition.
  absl::StatusOr<double> AdaptiveAt(double gamma) const;
  absl::StatusOr<PrivacyProfile> AdaptiveProfile() const;

  // PLRV ranges of the first step that select each branch.
  PlrvRange BranchRegion(int branch) const;

 private:
  Counterexample(CounterexampleParams params, DensityPair first,
                 std::vector<DensityPair> middle,
                 std::vector<PrivacyProfile> last_profiles,
                 std::vector<PrivacyProfile> tails)
      : params_(params),
        first_(first),
        middle_(std::move(middle)),
        last_profiles_(std::move(last_profiles)),
        tails_(std::move(tails)) {}

  CounterexampleParams params_;
  DensityPair first_;
  // Index 0 holds branch 1.
  std::vector<DensityPair> middle_;
  std::vector<PrivacyProfile> last_profiles_;
  // tails_[i] = middle_[i] (x) last_profiles_[i].
  std::vector<PrivacyProfile> tails_;
};

// H_adapt(gamma) for the given parameters (builds the branch profiles).
absl::StatusOr<double> AdaptiveProfileExample(
    double gamma, const CounterexampleParams& params = {});

// max(H(gamma), 1 - gamma + gamma H(1 / gamma)) for a profile given as a
// function.
template <typename F>
absl::StatusOr<double> SymmetrizedAt(F h, double gamma) {
  absl::StatusOr<double> direct = h(gamma);
  if (!direct.ok() || gamma == 0.0) return direct;
  absl::StatusOr<double> mirrored = h(1.0 / gamma);
  if (!mirrored.ok()) return mirrored.status();
  const double hat = 1.0 - gamma + gamma * *mirrored;
  return *direct > hat ? *direct : hat;
}

}  // namespace fdp

#endif  // FDP_COUNTEREXAMPLE_H_
