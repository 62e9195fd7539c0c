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

#ifndef FDP_PROFILES_H_
#define FDP_PROFILES_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/curves.h"
#include "fdp/density_pair.h"
#include "fdp/grid.h"
#include "fdp/quadrature.h"

namespace fdp {

// Profiles whose value at the largest grid point exceeds this are rejected:
// the grid would truncate mass.
inline constexpr double kTailTol = 1e-8;
// Absolute tolerance of hockey-stick quadratures.
inline constexpr double kIntTol = 1e-10;

// A privacy profile H(gamma) sampled on a GammaGrid.
//
// Stored as the excess E(gamma) = H(gamma) - max(1 - gamma, 0) >= 0, which
// keeps relative accuracy where H is close to 1 - gamma and turns the dual
// profile into E_hat(gamma) = gamma * E(1 / gamma). Evaluation interpolates
// linearly between knots; beyond the largest knot the last value is held if it
// is at most kTailTol, otherwise evaluation fails.
class PrivacyProfile {
 public:
  // Validates H samples: H(0) = 1, values in [0, 1], non-increasing, convex
  // within tol_convex and H >= max(1 - gamma, 0) - tol_convex.
  static absl::StatusOr<PrivacyProfile> Create(
      std::shared_ptr<const GammaGrid> grid, const std::vector<double>& h,
      double tol_convex = kTolConvex);

  // Wraps numerically computed excess values, clamped into [0, min(1,
  // gamma)].
  static PrivacyProfile FromExcess(std::shared_ptr<const GammaGrid> grid,
                                   std::vector<double> excess);

  // max(1 - gamma, 0): the profile of identical distributions.
  static PrivacyProfile Identity(
      std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

  const GammaGrid& grid() const { return *grid_; }
  const std::shared_ptr<const GammaGrid>& grid_ptr() const { return grid_; }
  size_t size() const { return excess_.size(); }
  double gamma(size_t i) const { return grid_->gamma(i); }

  const std::vector<double>& excess() const { return excess_; }
  double excess(size_t i) const { return excess_[i]; }
  // H at knot i.
  double value(size_t i) const;
  std::vector<double> Values() const;

  // Excess at the largest knot.
  double TailExcess() const { return excess_.back(); }

  absl::StatusOr<double> operator()(double gamma) const;
  absl::StatusOr<double> Excess(double gamma) const;

 private:
  PrivacyProfile(std::shared_ptr<const GammaGrid> grid,
                 std::vector<double> excess)
      : grid_(std::move(grid)), excess_(std::move(excess)) {}

  std::shared_ptr<const GammaGrid> grid_;
  std::vector<double> excess_;
};

// D_gamma[P || Q] = integral of [p - gamma q]_+, by adaptive quadrature split
// at the kink L(y) = ln gamma.
absl::StatusOr<double> HockeyStick(const DensityPair& pair, double gamma,
                                   const QuadratureOptions& options = {});

// HockeyStick(pair, gamma) - max(1 - gamma, 0), integrated directly.
absl::StatusOr<double> HockeyStickExcess(const DensityPair& pair, double gamma,
                                         const QuadratureOptions& options = {});

absl::StatusOr<PrivacyProfile> ProfileFromPair(
    const DensityPair& pair,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

// H(gamma) = 1 + (f^{-1})^*(-gamma), from the sampled graph of f.
PrivacyProfile TradeoffToProfile(
    const TradeoffCurve& f,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

// f^{-1}(alpha) = 1 + H^*(-alpha); evaluated through the dual profile so that
// f itself comes out without a resampling step. Fails when the profile's tail
// exceeds kTailTol.
absl::StatusOr<TradeoffCurve> ProfileToTradeoff(
    const PrivacyProfile& h,
    const std::vector<double>& alpha = StandardAlphaGrid());

// H_hat(gamma) = 1 - gamma + gamma H(1 / gamma).
PrivacyProfile HatProfile(const PrivacyProfile& h);

// max(H, H_hat).
PrivacyProfile SymmetrizeProfile(const PrivacyProfile& h);

// delta = H(e^epsilon); fails when e^epsilon lies outside the grid's positive
// range.
absl::StatusOr<double> EpsilonDelta(const PrivacyProfile& h, double epsilon);

// Smallest epsilon >= 0 with D_{e^epsilon}[P || Q] <= delta, by bisection on
// direct hockey-stick evaluations.
absl::StatusOr<double> EpsilonForDelta(const DensityPair& pair, double delta);

// Pointwise maximum of profiles on the same grid.
absl::StatusOr<PrivacyProfile> MaxProfile(const PrivacyProfile& a,
                                          const PrivacyProfile& b);

}  // namespace fdp

#endif  // FDP_PROFILES_H_
