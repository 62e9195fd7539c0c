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

#include "fdp/plrv.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/density_pair.h"
#include "fdp/quadrature.h"

namespace fdp {
namespace {

QuadratureOptions MomentOptions() {
  QuadratureOptions o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-11;
  o.max_depth = 14;
  return o;
}

absl::Status CheckParams(double q, double mu, double sigma) {
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("q must lie in [0, 1], got %g", q));
  }
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be positive and finite, got %g", sigma));
  }
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mu must be non-negative and finite, got %g", mu));
  }
  return absl::OkStatus();
}

// Sum of integrals over consecutive pieces of [cuts.front(), cuts.back()].
absl::StatusOr<double> IntegratePieces(const std::function<double(double)>& f,
                                       std::vector<double> cuts,
                                       const QuadratureOptions& options) {
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    absl::StatusOr<double> r = Integrate(f, cuts[i], cuts[i + 1], options);
    if (!r.ok()) return r.status();
    total += *r;
  }
  return total;
}

// Expectation of g(L) under P (under_p) or Q, with optional extra cut points
// inside the domain.
absl::StatusOr<double> Expect(const DensityPair& pair, bool under_p,
                              const std::function<double(double)>& g,
                              std::vector<double> cuts = {}) {
  auto f = [&](double y) {
    const double logd = under_p ? pair.LogP(y) : pair.LogQ(y);
    return std::exp(logd) * g(pair.Plrv(y));
  };
  std::vector<double> pieces = {pair.lo(), pair.hi()};
  for (double c : cuts) {
    if (c > pair.lo() && c < pair.hi()) pieces.push_back(c);
  }
  return IntegratePieces(f, std::move(pieces), MomentOptions());
}

}  // namespace

absl::StatusOr<Regime> RegimeFromFlag(int flag) {
  if (flag == 0) return Regime::kSmallQ;
  if (flag == 1) return Regime::kLargeQ;
  return absl::InvalidArgumentError(
      absl::StrFormat("regime flag must be 0 or 1, got %d", flag));
}

int RegimeFlag(Regime regime) { return regime == Regime::kSmallQ ? 0 : 1; }

absl::StatusOr<MomentSummary> ExactMoments(double q, double mu, double sigma) {
  if (absl::Status s = CheckParams(q, mu, sigma); !s.ok()) return s;
  MomentSummary m;
  if (q == 0.0 || mu == 0.0) return m;
  absl::StatusOr<DensityPair> pair = DensityPair::Mixture(q, mu, sigma);
  if (!pair.ok()) return pair.status();
  for (bool under_p : {true, false}) {
    absl::StatusOr<double> mean =
        Expect(*pair, under_p, [](double l) { return l; });
    if (!mean.ok()) return mean.status();
    const double c = *mean;
    absl::StatusOr<double> var =
        Expect(*pair, under_p, [c](double l) { return (l - c) * (l - c); });
    if (!var.ok()) return var.status();
    // |L - mean|^3 has a kink where L crosses the mean.
    absl::StatusOr<double> abs3 = Expect(
        *pair, under_p,
        [c](double l) {
          const double d = std::abs(l - c);
          return d * d * d;
        },
        {pair->PlrvInverse(c)});
    if (!abs3.ok()) return abs3.status();
    if (under_p) {
      m.mean_p = c;
      m.var_p = *var;
      m.abs3_p = *abs3;
    } else {
      m.mean_q = c;
      m.var_q = *var;
      m.abs3_q = *abs3;
    }
  }
  return m;
}

absl::StatusOr<ExpMoments> ExactExpMoments(double q, double mu, double sigma) {
  if (absl::Status s = CheckParams(q, mu, sigma); !s.ok()) return s;
  absl::StatusOr<DensityPair> pair = DensityPair::Mixture(q, mu, sigma);
  if (!pair.ok()) return pair.status();
  absl::StatusOr<double> a =
      Expect(*pair, true, [](double l) { return std::exp(-l); });
  if (!a.ok()) return a.status();
  absl::StatusOr<double> b =
      Expect(*pair, false, [](double l) { return std::exp(l); });
  if (!b.ok()) return b.status();
  return ExpMoments{*a, *b};
}

double GetApprox(Regime regime, double q, double sigma, double mu) {
  const double r = mu / sigma;
  if (regime == Regime::kSmallQ) return 0.5 * q * q * std::expm1(r * r);
  return 0.5 * q * q * r * r;
}

absl::StatusOr<double> InvBudg(Regime regime, double q, double sigma,
                               double budget) {
  if (!(budget >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("budget must be non-negative, got %g", budget));
  }
  if (!(q > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("q must be positive, got %g", q));
  }
  if (regime == Regime::kSmallQ) {
    return sigma * std::sqrt(std::log1p(2.0 * budget / (q * q)));
  }
  return sigma * std::sqrt(2.0 * budget) / q;
}

double VarianceApprox(Regime regime, double q, double sigma, double mu) {
  return 2.0 * GetApprox(regime, q, sigma, mu);
}

double ThirdMomentBound(Regime regime, double q, double sigma, double mu) {
  const double r = mu / sigma;
  if (regime == Regime::kSmallQ) {
    const double e = std::exp(r * r);
    return q * q * q * (e * e * e + 3.0 * e + 1.0);
  }
  return (2.0 - q * q * q) * std::sqrt(8.0 / std::numbers::pi) * r * r * r;
}

absl::StatusOr<std::vector<ApproxErrorRow>> ApproxErrorCurves(
    Regime regime, const std::vector<double>& q_list,
    const std::vector<double>& sigma_list, double mu) {
  std::vector<ApproxErrorRow> rows;
  for (double q : q_list) {
    for (double sigma : sigma_list) {
      if (absl::Status s = CheckParams(q, mu, sigma); !s.ok()) return s;
      if (q == 0.0 || mu == 0.0) {
        return absl::InvalidArgumentError(
            "relative errors need q > 0 and mu > 0");
      }
      absl::StatusOr<MomentSummary> m = ExactMoments(q, mu, sigma);
      if (!m.ok()) return m.status();
      ApproxErrorRow row;
      row.q = q;
      row.sigma = sigma;
      row.exact_mean = m->mean_p;
      row.exact_var = m->var_p;
      row.approx_mean = GetApprox(regime, q, sigma, mu);
      row.approx_var = VarianceApprox(regime, q, sigma, mu);
      row.rel_err_mean =
          std::abs(row.exact_mean - row.approx_mean) / row.approx_mean;
      row.rel_err_var = std::abs(row.exact_var - row.approx_var) / row.approx_var;
      row.ratio_mean_over_var = row.exact_mean / row.exact_var;
      rows.push_back(row);
    }
  }
  return rows;
}

absl::StatusOr<double> RenyiDivergence(double q, double sigma, double order,
                                       double mu) {
  if (absl::Status s = CheckParams(q, mu, sigma); !s.ok()) return s;
  if (!(std::isfinite(order) && order > 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("order must be finite and above 1, got %g", order));
  }
  if (q == 0.0 || mu == 0.0) return 0.0;
  const double r = mu / sigma;
  const double max_safe =
      0.5 + std::sqrt(0.25 + 2.0 * std::log(std::numeric_limits<double>::max()) /
                                 (r * r));
  auto overflow = [&] {
    return absl::OutOfRangeError(absl::StrFormat(
        "order %g overflows the log-moment; max safe order is %.6g", order,
        max_safe));
  };
  // ln[(p / q)^order q] = base + rel(y), where base collects the terms of the
  // dominant Gaussian component,
  //   base = order ln q + order (order - 1) mu^2 / (2 s^2) - ln(s sqrt(2 pi)),
  // and rel is O(1) near its peak at y ~ order mu. With
  // t(y) = (2 mu y - mu^2) / (2 s^2), ln(p / q) = t + ln q + ln1p(c e^{-t})
  // for t > 0 and ln(1 - q) + ln1p(e^t / c) otherwise, c = (1 - q) / q.
  const double s2 = sigma * sigma;
  const double log_q = std::log(q);
  const double c = (1.0 - q) / q;
  const double base_rel = order * log_q + order * (order - 1.0) * mu * mu / (2 * s2);
  const double base = base_rel - std::log(sigma * std::sqrt(2 * std::numbers::pi));
  if (!std::isfinite(base)) return overflow();
  auto rel = [&](double y) {
    const double t = (2 * mu * y - mu * mu) / (2 * s2);
    if (q == 1.0 || t > 0.0) {
      const double d = y - order * mu;
      const double tail = q == 1.0 ? 0.0 : std::log1p(c * std::exp(-t));
      return -d * d / (2 * s2) + order * tail;
    }
    return order * (std::log1p(-q) + std::log1p(std::exp(t) / c)) -
           y * y / (2 * s2) - base_rel;
  };
  const double lo = -12.0 * sigma;
  const double hi = order * mu + 12.0 * sigma;
  if (!std::isfinite(hi)) return overflow();
  // Shift by the largest value of rel so the integrand stays in range. The
  // peak can be narrower than the scan spacing, so it is refined by
  // golden-section search.
  double shift = -std::numeric_limits<double>::infinity();
  double peak = order * mu;
  constexpr int kScan = 2000;
  const double step = (hi - lo) / kScan;
  auto consider = [&](double y) {
    const double v = rel(y);
    if (v > shift) {
      shift = v;
      peak = y;
    }
  };
  for (int i = 0; i <= kScan; ++i) consider(lo + step * i);
  consider(0.0);
  consider(mu);
  consider(order * mu);
  {
    double a = std::max(lo, peak - step);
    double b = std::min(hi, peak + step);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200 && b - a > 1e-9 * sigma; ++it) {
      const double x1 = b - ratio * (b - a);
      const double x2 = a + ratio * (b - a);
      if (rel(x1) >= rel(x2)) {
        b = x2;
      } else {
        a = x1;
      }
    }
    consider(0.5 * (a + b));
  }
  if (!std::isfinite(shift)) return overflow();
  // The shifted integrand peaks at 1 with width ~ sigma, so an absolute
  // tolerance tied to sigma is a relative one for the whole integral.
  QuadratureOptions options;
  options.abs_tol = 1e-15 * sigma;
  options.rel_tol = 1e-12;
  options.max_depth = 14;
  std::vector<double> breaks = {lo, 0.0, order * mu, hi};
  for (double y : {peak - 12.0 * sigma, peak, peak + 12.0 * sigma}) {
    if (y > lo && y < hi) breaks.push_back(y);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  absl::StatusOr<double> integral = IntegratePieces(
      [&](double y) { return std::exp(rel(y) - shift); }, breaks, options);
  if (!integral.ok()) return integral.status();
  const double value =
      (base + shift + std::log(*integral)) / (order - 1.0);
  if (!std::isfinite(value)) return overflow();
  return std::max(0.0, value);
}

}  // namespace fdp
