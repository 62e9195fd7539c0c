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

#ifndef FDP_DENSITY_PAIR_H_
#define FDP_DENSITY_PAIR_H_

#include <span>
#include <string>

#include "absl/status/statusor.h"

namespace fdp {

// A one-dimensional pair (P, Q) of output distributions.
//
// The unswapped pair is P = (1 - q) N(0, s^2) + q N(mu, s^2), Q = N(0, s^2);
// q = 1 gives the Gaussian pair. The PLRV L(y) = ln p(y) - ln q(y) is
// monotone in y, so its level sets and tail probabilities are available in
// closed form. Swapped() exchanges the roles of P and Q.
class DensityPair {
 public:
  enum class Kind { kGaussian, kMixture, kProduct };

  static absl::StatusOr<DensityPair> Gaussian(double mu, double sigma = 1.0);
  static absl::StatusOr<DensityPair> Mixture(double q, double mu,
                                             double sigma = 1.0);
  // Product of Gaussian pairs with shifts mus and common sigma. Its PLRV has
  // the law of a single Gaussian pair with shift sqrt(sum mu_i^2).
  static absl::StatusOr<DensityPair> GaussianProduct(
      std::span<const double> mus, double sigma = 1.0);

  DensityPair Swapped() const;

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  bool swapped() const { return swapped_; }
  // True when P = Q (q = 0 or mu = 0).
  bool identical() const { return q_ == 0.0 || mu_ == 0.0; }

  double LogP(double y) const;
  double LogQ(double y) const;
  // L(y) = LogP(y) - LogQ(y).
  double Plrv(double y) const;

  // Integration domain: 12 standard deviations around both components.
  double lo() const;
  double hi() const;

  // True when L is increasing in y.
  bool PlrvIncreasing() const { return !swapped_; }

  // The y with L(y) = ell; -inf or +inf when ell is below or above the range
  // of L. Undefined for identical pairs.
  double PlrvInverse(double ell) const;

  // Tail probabilities of L at ell under both distributions. Each pair
  // (upper, lower) is computed from the side that keeps relative accuracy.
  struct Tails {
    double p_upper;  // P(L > ell)
    double p_lower;  // P(L <= ell)
    double q_upper;  // Q(L > ell)
    double q_lower;  // Q(L <= ell)
  };
  Tails PlrvTails(double ell) const;

  std::string Describe() const;

 private:
  DensityPair(Kind kind, double q, double mu, double sigma, bool swapped)
      : kind_(kind), q_(q), mu_(mu), sigma_(sigma), swapped_(swapped) {}

  // PLRV of the unswapped pair and its inverse.
  double BaseL(double y) const;
  double BaseLInverse(double ell) const;
  Tails BaseTails(double ell) const;

  Kind kind_;
  double q_;
  double mu_;
  double sigma_;
  bool swapped_;
};

}  // namespace fdp

#endif  // FDP_DENSITY_PAIR_H_
