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

#include "fdp/clt.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/grid.h"

namespace fdp {

absl::StatusOr<double> BerryEsseenBound(double kappa, double rho, double c) {
  if (!(kappa >= 0.0 && kappa <= 0.25)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("kappa must lie in [0, 1/4], got %g", kappa));
  }
  if (!(rho >= 0.0 && rho <= 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("rho must lie in [0, 1/2], got %g", rho));
  }
  if (!(std::isfinite(c) && c >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("the constant C must be non-negative, got %g", c));
  }
  const double rho_term = rho > 0.0 ? rho * std::abs(std::log(rho)) : 0.0;
  return c * (rho_term + std::sqrt(kappa));
}

absl::StatusOr<CltBandResult> CltBand(const CltParameters& p) {
  if (!(std::isfinite(p.v) && p.v > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("v > 0 fails: v = %g", p.v));
  }
  if (!(p.eta1 >= 0.0 && p.eta2 >= 0.0 && p.kappa >= 0.0 && p.rho >= 0.0)) {
    return absl::InvalidArgumentError(
        "eta1, eta2, kappa and rho must be non-negative");
  }
  if (!(4.0 * p.rho * p.rho <= p.v)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "4 rho^2 <= v fails: 4 rho^2 = %g, v = %g", 4.0 * p.rho * p.rho, p.v));
  }
  if (!(4.0 * p.kappa <= p.v)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "4 kappa <= v fails: 4 kappa = %g, v = %g", 4.0 * p.kappa, p.v));
  }
  const double root_v = std::sqrt(p.v);
  const double mu = (p.m1 + p.m2) / root_v;
  const double phi = (p.eta1 + p.eta2) / root_v;
  absl::StatusOr<double> delta =
      BerryEsseenBound(std::min(0.25, p.kappa / p.v),
                       std::min(0.5, p.rho / root_v), p.c);
  if (!delta.ok()) return delta.status();
  const std::vector<double>& alpha = StandardAlphaGrid();
  std::vector<double> lower(alpha.size());
  std::vector<double> upper(alpha.size());
  const double mu_lo = std::max(0.0, mu - phi);
  const double mu_hi = mu + phi;
  for (size_t i = 0; i < alpha.size(); ++i) {
    const double a = alpha[i];
    const double g_hi = a + *delta >= 1.0
                            ? 0.0
                            : GaussianTradeoffValue(mu_hi, a + *delta);
    const double g_lo =
        a - *delta <= 0.0 ? 1.0 : GaussianTradeoffValue(mu_lo, a - *delta);
    lower[i] = std::clamp(g_hi - *delta, 0.0, 1.0);
    upper[i] = std::clamp(g_lo + *delta, 0.0, 1.0);
  }
  // FromSamples also caps both sides at 1 - alpha, which every trade-off
  // function respects.
  return CltBandResult{mu, phi, *delta, TradeoffCurve::FromSamples(alpha, lower),
                       TradeoffCurve::FromSamples(alpha, upper)};
}

double BandWidth(const CltBandResult& band) {
  double w = 0.0;
  const std::vector<double>& lo = band.lower.values();
  const std::vector<double>& hi = band.upper.values();
  for (size_t i = 0; i < lo.size(); ++i) w = std::max(w, hi[i] - lo[i]);
  return w;
}

}  // namespace fdp
