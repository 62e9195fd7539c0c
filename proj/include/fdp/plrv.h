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

#ifndef FDP_PLRV_H_
#define FDP_PLRV_H_

#include <vector>

#include "absl/status/statusor.h"

namespace fdp {

// Moments of the privacy loss L = ln(p / q) of the subsampled Gaussian pair
// P = q N(mu, s^2) + (1 - q) N(0, s^2), Q = N(0, s^2), and the asymptotic
// approximations used by the approximate GDP filter.

// Asymptotic regime of the sampling rate: kSmallQ is q -> 0, kLargeQ is
// q -> 1 together with s -> infinity.
enum class Regime { kSmallQ = 0, kLargeQ = 1 };

absl::StatusOr<Regime> RegimeFromFlag(int flag);
int RegimeFlag(Regime regime);

struct MomentSummary {
  double mean_p = 0.0;
  double mean_q = 0.0;
  double var_p = 0.0;
  double var_q = 0.0;
  // Third absolute central moments.
  double abs3_p = 0.0;
  double abs3_q = 0.0;
};

// All six moments by adaptive quadrature on [-12 s, mu + 12 s].
absl::StatusOr<MomentSummary> ExactMoments(double q, double mu, double sigma);

// E_P[e^{-L}] and E_Q[e^{L}]; both equal 1 exactly.
struct ExpMoments {
  double p_exp_neg_l;
  double q_exp_l;
};
absl::StatusOr<ExpMoments> ExactExpMoments(double q, double mu, double sigma);

// Leading-order mean of L under P:
//   kSmallQ: q^2 (e^{mu^2/s^2} - 1) / 2,  kLargeQ: q^2 mu^2 / (2 s^2).
// In the accountants, sigma is the noise-to-clip ratio and mu = 1 is a full
// clip (or sigma = s C and mu = ||g|| in gradient units; only mu / sigma
// matters).
double GetApprox(Regime regime, double q, double sigma, double mu);

// The mu with GetApprox(regime, q, sigma, mu) = budget. Requires budget >= 0
// and q > 0.
absl::StatusOr<double> InvBudg(Regime regime, double q, double sigma,
                               double budget);

// Leading-order variance: twice GetApprox.
double VarianceApprox(Regime regime, double q, double sigma, double mu);

// Leading-order bound on the third absolute central moment:
//   kSmallQ: q^3 (e^{3 mu^2/s^2} + 3 e^{mu^2/s^2} + 1),
//   kLargeQ: (2 - q^3) sqrt(8 / pi) mu^3 / s^3.
double ThirdMomentBound(Regime regime, double q, double sigma, double mu);

struct ApproxErrorRow {
  double q;
  double sigma;
  double exact_mean;
  double exact_var;
  double approx_mean;
  double approx_var;
  double rel_err_mean;
  double rel_err_var;
  double ratio_mean_over_var;
};

// Relative errors |exact - approx| / |approx| of mean_p and var_p on the
// q x sigma lattice, at mu = 1.
absl::StatusOr<std::vector<ApproxErrorRow>> ApproxErrorCurves(
    Regime regime, const std::vector<double>& q_list,
    const std::vector<double>& sigma_list, double mu = 1.0);

// D_order(P || Q) = ln E_Q[(p / q)^order] / (order - 1), by quadrature of the
// log-scaled integrand on [-12 s, order mu + 12 s].
absl::StatusOr<double> RenyiDivergence(double q, double sigma, double order,
                                       double mu = 1.0);

}  // namespace fdp

#endif  // FDP_PLRV_H_
