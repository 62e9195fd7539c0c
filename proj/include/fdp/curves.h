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

#ifndef FDP_CURVES_H_
#define FDP_CURVES_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/piecewise_linear.h"

namespace fdp {

// Absolute tolerance on the convexity check (in value units, see
// TradeoffCurve::Create).
inline constexpr double kTolConvex = 1e-9;
// Tolerance used when comparing curves.
inline constexpr double kGridTol = 1e-4;

// A trade-off function sampled on an alpha grid; evaluation interpolates
// linearly.
class TradeoffCurve {
 public:
  // Validates the samples: alpha strictly increasing from 0 to 1, values in
  // [0, 1], non-increasing, convex within tol_convex (each value lies at most
  // tol_convex above the chord of its neighbours) and values <= 1 - alpha +
  // tol_convex.
  static absl::StatusOr<TradeoffCurve> Create(std::vector<double> alpha,
                                              std::vector<double> values,
                                              double tol_convex = kTolConvex);

  // Builds a curve from numerically produced samples: clamps into [0, 1 -
  // alpha] and enforces monotonicity. The caller guarantees near-convexity.
  static TradeoffCurve FromSamples(std::vector<double> alpha,
                                   std::vector<double> values);

  // 1 - alpha on the given grid (default: the standard grid).
  static TradeoffCurve Identity();
  static TradeoffCurve Identity(const std::vector<double>& alpha);

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& values() const { return values_; }
  size_t size() const { return alpha_.size(); }

  double operator()(double a) const;

  // Piecewise-linear resampling onto another alpha grid.
  TradeoffCurve ResampleTo(const std::vector<double>& alpha) const;

 private:
  TradeoffCurve(std::vector<double> alpha, std::vector<double> values)
      : alpha_(std::move(alpha)), values_(std::move(values)) {}

  std::vector<double> alpha_;
  std::vector<double> values_;
};

// G_mu(alpha) = Phi(Phi^{-1}(1 - alpha) - mu) at a single point.
double GaussianTradeoffValue(double mu, double alpha);

absl::StatusOr<TradeoffCurve> GaussianTradeoff(double mu);

// (1 - q)(1 - alpha) + q G_mu(alpha).
absl::StatusOr<TradeoffCurve> SubsampledGaussianPlus(double q, double mu);

// The inverse of SubsampledGaussianPlus(q, mu).
absl::StatusOr<TradeoffCurve> SubsampledGaussianMinus(double q, double mu);

// Reflection of the graph across y = x, resampled onto the input grid.
TradeoffCurve Invert(const TradeoffCurve& f);

// Lower convex envelope of min(f, Invert(f)).
TradeoffCurve Symmetrize(const TradeoffCurve& f);

// Greatest convex minorant of the piecewise-linear interpolant of the points,
// reported at every input abscissa.
absl::StatusOr<PiecewiseLinear> LowerConvexEnvelope(
    std::span<const Point> points);

// Smallest Delta >= 0 with f1(a + Delta) - Delta <= f2(a) and f2(a + Delta) -
// Delta <= f1(a) for all grid points a with a + Delta <= 1.
double DeltaDivergence(const TradeoffCurve& f1, const TradeoffCurve& f2);

struct BlackwellOrder {
  enum class Kind { kLessEq, kGreaterEq, kEqual, kIncomparable };
  Kind kind;
  // Alpha locations where f1 - f2 changes sign; set only when incomparable.
  std::vector<double> crossings;
};

// Compares f1 against f2 (same grid required). GreaterEq means f1 >= f2.
absl::StatusOr<BlackwellOrder> BlackwellCompare(const TradeoffCurve& f1,
                                                const TradeoffCurve& f2,
                                                double tol = kGridTol);

const char* BlackwellKindName(BlackwellOrder::Kind kind);

// True iff G_mu(a + delta) - delta <= f(a) <= G_mu(a - delta) + delta at every
// grid point, with arguments clamped to [0, 1].
bool ApproxGdpCheck(const TradeoffCurve& f, double mu, double delta);

}  // namespace fdp

#endif  // FDP_CURVES_H_
