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

#include "fdp/density_pair.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/normal.h"

namespace fdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDomainRadius = 12.0;

absl::Status ValidateShift(double mu, double sigma) {
  if (!std::isfinite(mu) || mu < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mu must be finite and non-negative, got %g", mu));
  }
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be finite and positive, got %g", sigma));
  }
  return absl::OkStatus();
}

// ln(e^a - 1) for a > 0.
double LogExpm1(double a) {
  if (a > 20.0) return a + std::log1p(-std::exp(-a));
  return std::log(std::expm1(a));
}

}  // namespace

absl::StatusOr<DensityPair> DensityPair::Gaussian(double mu, double sigma) {
  if (absl::Status s = ValidateShift(mu, sigma); !s.ok()) return s;
  return DensityPair(Kind::kGaussian, 1.0, mu, sigma, false);
}

absl::StatusOr<DensityPair> DensityPair::Mixture(double q, double mu,
                                                 double sigma) {
  if (absl::Status s = ValidateShift(mu, sigma); !s.ok()) return s;
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sampling rate q must lie in [0, 1], got %g", q));
  }
  return DensityPair(Kind::kMixture, q, mu, sigma, false);
}

absl::StatusOr<DensityPair> DensityPair::GaussianProduct(
    std::span<const double> mus, double sigma) {
  double total = 0.0;
  for (double mu : mus) {
    if (absl::Status s = ValidateShift(mu, sigma); !s.ok()) return s;
    total = std::hypot(total, mu);
  }
  return DensityPair(Kind::kProduct, 1.0, total, sigma, false);
}

DensityPair DensityPair::Swapped() const {
  return DensityPair(kind_, q_, mu_, sigma_, !swapped_);
}

double DensityPair::BaseL(double y) const {
  if (identical()) return 0.0;
  const double z = (mu_ * y - 0.5 * mu_ * mu_) / (sigma_ * sigma_);
  if (q_ == 1.0) return z;
  if (z > 0.0) return z + std::log(q_ + (1.0 - q_) * std::exp(-z));
  return std::log1p(q_ * std::expm1(z));
}

double DensityPair::BaseLInverse(double ell) const {
  if (identical()) return std::numeric_limits<double>::quiet_NaN();
  if (ell == kInf) return kInf;
  double t;
  if (q_ == 1.0) {
    if (ell == -kInf) return -kInf;
    t = ell;
  } else {
    const double floor = std::log1p(-q_);
    if (ell <= floor) return -kInf;
    t = floor + LogExpm1(ell - floor) - std::log(q_);
  }
  return (sigma_ * sigma_ * t + 0.5 * mu_ * mu_) / mu_;
}

DensityPair::Tails DensityPair::BaseTails(double ell) const {
  if (identical()) {
    if (ell < 0.0) return Tails{1.0, 0.0, 1.0, 0.0};
    return Tails{0.0, 1.0, 0.0, 1.0};
  }
  const double y = BaseLInverse(ell);
  if (y == -kInf) return Tails{1.0, 0.0, 1.0, 0.0};
  if (y == kInf) return Tails{0.0, 1.0, 0.0, 1.0};
  const double u0 = y / sigma_;
  const double u1 = (y - mu_) / sigma_;
  Tails t;
  t.q_upper = NormalSf(u0);
  t.q_lower = NormalCdf(u0);
  t.p_upper = (1.0 - q_) * t.q_upper + q_ * NormalSf(u1);
  t.p_lower = (1.0 - q_) * t.q_lower + q_ * NormalCdf(u1);
  return t;
}

double DensityPair::LogQ(double y) const {
  const double base_q = NormalLogPdf(y / sigma_) - std::log(sigma_);
  if (swapped_) return base_q + BaseL(y);
  return base_q;
}

double DensityPair::LogP(double y) const {
  const double base_q = NormalLogPdf(y / sigma_) - std::log(sigma_);
  if (swapped_) return base_q;
  return base_q + BaseL(y);
}

double DensityPair::Plrv(double y) const {
  return swapped_ ? -BaseL(y) : BaseL(y);
}

double DensityPair::lo() const {
  return std::min(0.0, mu_) - kDomainRadius * sigma_;
}

double DensityPair::hi() const {
  return std::max(0.0, mu_) + kDomainRadius * sigma_;
}

double DensityPair::PlrvInverse(double ell) const {
  return swapped_ ? BaseLInverse(-ell) : BaseLInverse(ell);
}

DensityPair::Tails DensityPair::PlrvTails(double ell) const {
  if (!swapped_ || identical()) return BaseTails(ell);
  // L = -L0, P = Q0 and Q = P0.
  const Tails b = BaseTails(-ell);
  return Tails{b.q_lower, b.q_upper, b.p_lower, b.p_upper};
}

std::string DensityPair::Describe() const {
  std::string base;
  switch (kind_) {
    case Kind::kGaussian:
      base = absl::StrFormat("gaussian(mu=%g, sigma=%g)", mu_, sigma_);
      break;
    case Kind::kMixture:
      base = absl::StrFormat("mixture(q=%g, mu=%g, sigma=%g)", q_, mu_, sigma_);
      break;
    case Kind::kProduct:
      base = absl::StrFormat("gaussian_product(mu=%g, sigma=%g)", mu_, sigma_);
      break;
  }
  return swapped_ ? "swapped " + base : base;
}

}  // namespace fdp
