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

#include "fdp/profiles.h"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/parallel.h"
#include "fdp/piecewise_linear.h"

namespace fdp {
namespace {

double Hinge(double gamma) { return gamma < 1.0 ? 1.0 - gamma : 0.0; }

// Index of the minimum of a convex sequence given by objective(k) over the
// hull vertices.
template <typename Objective>
size_t ArgminOnHull(const std::vector<size_t>& hull, Objective objective) {
  size_t lo = 0;
  size_t hi = hull.size() - 1;
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (objective(hull[mid + 1]) < objective(hull[mid])) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return hull[lo];
}

absl::Status TailError(double tail, double gamma_max) {
  return absl::OutOfRangeError(absl::StrFormat(
      "gamma grid too short: profile value %.3g at gamma_max=%.3g exceeds the "
      "tail tolerance %.1g; extend the grid",
      tail, gamma_max, kTailTol));
}

}  // namespace

absl::StatusOr<PrivacyProfile> PrivacyProfile::Create(
    std::shared_ptr<const GammaGrid> grid, const std::vector<double>& h,
    double tol_convex) {
  if (grid == nullptr || h.size() != grid->size()) {
    return absl::InvalidArgumentError(
        "profile values must match the gamma grid");
  }
  if (std::abs(h[0] - 1.0) > tol_convex) {
    return absl::InvalidArgumentError(
        absl::StrFormat("H(0) must equal 1, got %g", h[0]));
  }
  const size_t n = h.size();
  std::vector<double> excess(n);
  for (size_t i = 0; i < n; ++i) {
    const double g = grid->gamma(i);
    if (!(h[i] >= 0.0 && h[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("H(%g)=%g outside [0, 1]", g, h[i]));
    }
    if (h[i] < Hinge(g) - tol_convex) {
      return absl::InvalidArgumentError(
          absl::StrFormat("H(%g)=%g below max(1 - gamma, 0)", g, h[i]));
    }
    if (i > 0 && h[i] > h[i - 1] + tol_convex) {
      return absl::InvalidArgumentError(
          absl::StrFormat("profile increases at gamma=%g", g));
    }
    if (i > 0 && i + 1 < n) {
      const double g0 = grid->gamma(i - 1);
      const double g1 = grid->gamma(i + 1);
      const double w = (g - g0) / (g1 - g0);
      const double chord = (1.0 - w) * h[i - 1] + w * h[i + 1];
      if (h[i] > chord + tol_convex) {
        return absl::InvalidArgumentError(
            absl::StrFormat("profile is not convex at gamma=%g", g));
      }
    }
    excess[i] = std::max(0.0, h[i] - Hinge(g));
  }
  excess[0] = 0.0;
  return PrivacyProfile(std::move(grid), std::move(excess));
}

PrivacyProfile PrivacyProfile::FromExcess(std::shared_ptr<const GammaGrid> grid,
                                          std::vector<double> excess) {
  excess[0] = 0.0;
  for (size_t i = 1; i < excess.size(); ++i) {
    double e = excess[i];
    if (!(e >= 0.0)) e = 0.0;
    excess[i] = std::min(e, std::min(1.0, grid->gamma(i)));
  }
  return PrivacyProfile(std::move(grid), std::move(excess));
}

PrivacyProfile PrivacyProfile::Identity(std::shared_ptr<const GammaGrid> grid) {
  std::vector<double> excess(grid->size(), 0.0);
  return PrivacyProfile(std::move(grid), std::move(excess));
}

double PrivacyProfile::value(size_t i) const {
  return Hinge(grid_->gamma(i)) + excess_[i];
}

std::vector<double> PrivacyProfile::Values() const {
  std::vector<double> out(size());
  for (size_t i = 0; i < size(); ++i) out[i] = value(i);
  return out;
}

absl::StatusOr<double> PrivacyProfile::Excess(double gamma) const {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gamma must be finite and non-negative, got %g", gamma));
  }
  const size_t i = grid_->Locate(gamma);
  if (i + 1 >= size()) {
    if (TailExcess() > kTailTol) {
      return TailError(TailExcess(), grid_->gamma(size() - 1));
    }
    return TailExcess();
  }
  const double g0 = grid_->gamma(i);
  const double g1 = grid_->gamma(i + 1);
  const double w = (gamma - g0) / (g1 - g0);
  return excess_[i] + w * (excess_[i + 1] - excess_[i]);
}

absl::StatusOr<double> PrivacyProfile::operator()(double gamma) const {
  absl::StatusOr<double> e = Excess(gamma);
  if (!e.ok()) return e.status();
  return Hinge(gamma) + *e;
}

absl::StatusOr<double> HockeyStickExcess(const DensityPair& pair, double gamma,
                                         const QuadratureOptions& options) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gamma must be finite and non-negative, got %g", gamma));
  }
  if (gamma == 0.0 || pair.identical()) return 0.0;
  const double lg = std::log(gamma);
  const bool upper = gamma >= 1.0;
  // The positive part lives on {L > ln gamma} for gamma >= 1 and on
  // {L < ln gamma} below, a half-line in y on one side of the kink.
  const double kink = pair.PlrvInverse(lg);
  double a = pair.lo();
  double b = pair.hi();
  if (upper == pair.PlrvIncreasing()) {
    a = std::max(a, kink);
  } else {
    b = std::min(b, kink);
  }
  if (!(a < b)) return 0.0;
  std::function<double(double)> integrand;
  if (upper) {
    integrand = [&pair, lg](double y) {
      const double v = std::exp(pair.LogQ(y) + lg) * std::expm1(pair.Plrv(y) - lg);
      return v > 0.0 ? v : 0.0;
    };
  } else {
    integrand = [&pair, lg](double y) {
      const double v = std::exp(pair.LogP(y)) * std::expm1(lg - pair.Plrv(y));
      return v > 0.0 ? v : 0.0;
    };
  }
  absl::StatusOr<double> r = Integrate(integrand, a, b, options);
  if (!r.ok()) return r.status();
  return std::max(0.0, *r);
}

absl::StatusOr<double> HockeyStick(const DensityPair& pair, double gamma,
                                   const QuadratureOptions& options) {
  absl::StatusOr<double> e = HockeyStickExcess(pair, gamma, options);
  if (!e.ok()) return e.status();
  return std::min(1.0, Hinge(gamma) + *e);
}

absl::StatusOr<PrivacyProfile> ProfileFromPair(
    const DensityPair& pair, std::shared_ptr<const GammaGrid> grid) {
  if (pair.identical()) return PrivacyProfile::Identity(std::move(grid));
  std::vector<double> excess(grid->size(), 0.0);
  absl::Status status;
  std::mutex mu;
  QuadratureOptions options;
  options.abs_tol = kIntTol;
  ParallelFor(grid->size() - 1, [&](size_t k) {
    const size_t i = k + 1;
    absl::StatusOr<double> e = HockeyStickExcess(pair, grid->gamma(i), options);
    if (!e.ok()) {
      std::lock_guard<std::mutex> lock(mu);
      if (status.ok()) status = e.status();
      return;
    }
    excess[i] = *e;
  });
  if (!status.ok()) return status;
  if (excess.back() > kTailTol) {
    return TailError(excess.back(), grid->gamma(grid->size() - 1));
  }
  return PrivacyProfile::FromExcess(std::move(grid), std::move(excess));
}

PrivacyProfile TradeoffToProfile(const TradeoffCurve& f,
                                 std::shared_ptr<const GammaGrid> grid) {
  const std::vector<double>& a = f.alpha();
  const std::vector<double>& v = f.values();
  const std::vector<size_t> hull = LowerHullIndices(a, v);
  std::vector<double> excess(grid->size(), 0.0);
  for (size_t j = 1; j < grid->size(); ++j) {
    const double g = grid->gamma(j);
    auto objective = [&](size_t i) { return a[i] + g * v[i]; };
    const size_t best = ArgminOnHull(hull, objective);
    // Points (0, 1) and (1, 0) of the inverse's graph close the conjugate.
    const double m = std::min({objective(best), 1.0, g});
    excess[j] = std::min(1.0, g) - m;
  }
  return PrivacyProfile::FromExcess(std::move(grid), std::move(excess));
}

absl::StatusOr<TradeoffCurve> ProfileToTradeoff(
    const PrivacyProfile& h, const std::vector<double>& alpha) {
  if (h.TailExcess() > kTailTol) {
    return TailError(h.TailExcess(), h.gamma(h.size() - 1));
  }
  const GammaGrid& grid = h.grid();
  const size_t n = grid.size();
  std::vector<double> x(n);
  std::vector<double> hat(n);
  x[0] = 0.0;
  hat[0] = 1.0;
  for (size_t k = 1; k < n; ++k) {
    const double g = grid.gamma(k);
    x[k] = g;
    hat[k] = Hinge(g) + g * h.excess(grid.Reciprocal(k));
  }
  const std::vector<size_t> hull = LowerHullIndices(x, hat);
  std::vector<double> values(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) {
    const double a = alpha[i];
    // Minus the support line 1 - a x - hat at knot k, arranged so that small
    // values of f near a = 1 carry no cancellation from 1 - hat.
    auto objective = [&](size_t k) {
      if (k == 0) return -0.0;
      const double g = x[k];
      const double e = h.excess(grid.Reciprocal(k));
      return g < 1.0 ? -(g * ((1.0 - a) - e)) : -(1.0 - g * (a + e));
    };
    values[i] = std::max(0.0, -objective(ArgminOnHull(hull, objective)));
  }
  return TradeoffCurve::FromSamples(alpha, std::move(values));
}

PrivacyProfile HatProfile(const PrivacyProfile& h) {
  const GammaGrid& grid = h.grid();
  std::vector<double> excess(h.size(), 0.0);
  for (size_t i = 1; i < h.size(); ++i) {
    excess[i] = grid.gamma(i) * h.excess(grid.Reciprocal(i));
  }
  return PrivacyProfile::FromExcess(h.grid_ptr(), std::move(excess));
}

PrivacyProfile SymmetrizeProfile(const PrivacyProfile& h) {
  const PrivacyProfile hat = HatProfile(h);
  std::vector<double> excess(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    excess[i] = std::max(h.excess(i), hat.excess(i));
  }
  return PrivacyProfile::FromExcess(h.grid_ptr(), std::move(excess));
}

absl::StatusOr<double> EpsilonDelta(const PrivacyProfile& h, double epsilon) {
  const double gamma = std::exp(epsilon);
  if (!std::isfinite(epsilon) || gamma < h.gamma(1) ||
      gamma > h.gamma(h.size() - 1)) {
    return absl::OutOfRangeError(absl::StrFormat(
        "epsilon=%g outside the grid range [%g, %g]", epsilon,
        h.grid().log_gamma(1), h.grid().log_gamma(h.size() - 1)));
  }
  return h(gamma);
}

absl::StatusOr<double> EpsilonForDelta(const DensityPair& pair, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1], got %g", delta));
  }
  QuadratureOptions options;
  options.abs_tol = std::min(kIntTol, 1e-4 * delta);
  auto h = [&](double eps) { return HockeyStick(pair, std::exp(eps), options); };
  absl::StatusOr<double> at_zero = h(0.0);
  if (!at_zero.ok()) return at_zero.status();
  if (*at_zero <= delta) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (;;) {
    absl::StatusOr<double> v = h(hi);
    if (!v.ok()) return v.status();
    if (*v <= delta) break;
    lo = hi;
    hi *= 2.0;
    if (hi > 700.0) {
      return absl::OutOfRangeError("epsilon for the requested delta exceeds 700");
    }
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<double> v = h(mid);
    if (!v.ok()) return v.status();
    if (*v <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

absl::StatusOr<PrivacyProfile> MaxProfile(const PrivacyProfile& a,
                                          const PrivacyProfile& b) {
  if (!a.grid().SameAs(b.grid())) {
    return absl::InvalidArgumentError("profiles must share a gamma grid");
  }
  std::vector<double> excess(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    excess[i] = std::max(a.excess(i), b.excess(i));
  }
  return PrivacyProfile::FromExcess(a.grid_ptr(), std::move(excess));
}

}  // namespace fdp
