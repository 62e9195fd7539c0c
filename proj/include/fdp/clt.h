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

#ifndef FDP_CLT_H_
#define FDP_CLT_H_

#include "absl/status/statusor.h"
#include "fdp/curves.h"

namespace fdp {

// Inputs of the fully adaptive central limit band. m1 and m2 bound the summed
// conditional PLRV means under P and -Q, eta1 and eta2 their deviations, v the
// summed variance, kappa its fluctuation and rho the third-moment ratio.
struct CltParameters {
  double m1 = 0.0;
  double m2 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double v = 1.0;
  double kappa = 0.0;
  double rho = 0.0;
  // Stand-in for the unknown universal constant.
  double c = 1.0;
};

struct CltBandResult {
  double mu;
  double phi;
  double delta;
  // G_{mu+phi}(a + delta) - delta and G_{mu-phi}(a - delta) + delta, clamped.
  TradeoffCurve lower;
  TradeoffCurve upper;
};

// C (rho |ln rho| + sqrt(kappa)) for kappa in [0, 1/4], rho in [0, 1/2]; the
// rho = 0 limit of rho |ln rho| is 0.
absl::StatusOr<double> BerryEsseenBound(double kappa, double rho,
                                        double c = 1.0);

// mu = (m1 + m2) / sqrt(v), phi = (eta1 + eta2) / sqrt(v) and delta =
// BerryEsseenBound(kappa / v, rho / sqrt(v), c). Fails unless v > 0,
// 4 rho^2 <= v and 4 kappa <= v, naming the inequality that fails.
absl::StatusOr<CltBandResult> CltBand(const CltParameters& params);

// Width of a band: the largest upper - lower over the grid.
double BandWidth(const CltBandResult& band);

}  // namespace fdp

#endif  // FDP_CLT_H_
