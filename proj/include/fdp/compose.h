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

#ifndef FDP_COMPOSE_H_
#define FDP_COMPOSE_H_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/curves.h"
#include "fdp/density_pair.h"
#include "fdp/profiles.h"

namespace fdp {

// Tensor products of privacy profiles.
//
// (H1 (x) H2)(gamma) = integral of H2(gamma q1(y) / p1(y)) p1(y) dy, where H1
// is the profile of (P1, Q1). H2 is piecewise linear between its grid knots,
// so the integral over each stretch of y between two consecutive level sets
// {gamma e^{-L(y)} = gamma_k} has a closed form in the P1- and Q1-masses of
// that stretch, which come from the pair's PLRV tail probabilities. The
// result is exact for the interpolated H2 up to rounding of the normal CDF.

// A half-open range (lo, hi] of PLRV values of the first factor.
struct PlrvRange {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

// Full tensor profile on h2's grid.
absl::StatusOr<PrivacyProfile> TensorProfiles(const DensityPair& pair1,
                                              const PrivacyProfile& h2);

// (pair1 (x) h2)(gamma) at a single gamma, without grid interpolation.
absl::StatusOr<double> TensorProfileAt(const DensityPair& pair1,
                                       const PrivacyProfile& h2, double gamma);

// The Fubini integral restricted to {y : L1(y) in range}:
// integral over that set of H2(gamma e^{-L1(y)}) p1(y) dy.
absl::StatusOr<double> RestrictedTensorAt(const DensityPair& pair1,
                                          const PrivacyProfile& h2,
                                          double gamma, PlrvRange range);

// RestrictedTensorAt at every knot of h2's grid.
absl::StatusOr<std::vector<double>> RestrictedTensorValues(
    const DensityPair& pair1, const PrivacyProfile& h2, PlrvRange range);

// f1 (x) f2 where f1 is the trade-off function of pair1: f2 is converted to a
// profile, tensored and converted back.
absl::StatusOr<TradeoffCurve> TensorCurves(const DensityPair& pair1,
                                           const TradeoffCurve& f2);

// sqrt(sum mu_i^2).
double GdpCompose(std::span<const double> mus);

struct ComposedProfile {
  PrivacyProfile base;
  // The outermost (first) factor.
  DensityPair representative_pair;
  std::vector<std::string> provenance;
};

// Profile of pairs[0] (x) pairs[1] (x) ... evaluated right to left: the last
// pair's profile first, then one Fubini layer per remaining factor. Fails on
// an empty list.
absl::StatusOr<ComposedProfile> ComposePairs(
    std::span<const DensityPair> pairs,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

// Same, returning only the profile; the empty list gives the identity profile.
absl::StatusOr<PrivacyProfile> ComposeProfile(
    std::span<const DensityPair> pairs,
    std::shared_ptr<const GammaGrid> grid = GammaGrid::Standard());

struct ChainCheckResult {
  struct Violation {
    size_t i;
    size_t j;
    std::vector<double> crossings;
  };
  bool chain = true;
  std::vector<Violation> violations;
};

// Pairwise Blackwell comparison of a finite family; chain iff no pair is
// incomparable.
absl::StatusOr<ChainCheckResult> BlackwellChainCheck(
    std::span<const TradeoffCurve> family, double tol = kGridTol);

}  // namespace fdp

#endif  // FDP_COMPOSE_H_
