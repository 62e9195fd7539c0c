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

#include "fdp/curves.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/grid.h"
#include "fdp/normal.h"

namespace fdp {
namespace {

constexpr double kCrossingTol = 1e-6;
// Slack for the band comparison in ApproxGdpCheck, to absorb rounding only.
constexpr double kBandSlack = 1e-12;

absl::Status ValidateParams(double q, double mu) {
  if (!std::isfinite(mu) || mu < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mu must be finite and non-negative, got %g", mu));
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sampling rate q must lie in [0, 1], got %g", q));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<TradeoffCurve> TradeoffCurve::Create(std::vector<double> alpha,
                                                    std::vector<double> values,
                                                    double tol_convex) {
  const size_t n = alpha.size();
  if (n < 2 || values.size() != n) {
    return absl::InvalidArgumentError(
        "a trade-off curve needs at least two samples and matching lengths");
  }
  if (alpha.front() != 0.0 || alpha.back() != 1.0) {
    return absl::InvalidArgumentError("alpha grid must start at 0 and end at 1");
  }
  for (size_t i = 0; i < n; ++i) {
    if (i > 0 && !(alpha[i] > alpha[i - 1])) {
      return absl::InvalidArgumentError(
          absl::StrFormat("alpha grid not strictly increasing at index %d", i));
    }
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "value %g at alpha=%g outside [0, 1]", values[i], alpha[i]));
    }
    if (values[i] > 1.0 - alpha[i] + tol_convex) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "value %g at alpha=%g exceeds 1 - alpha", values[i], alpha[i]));
    }
    if (i > 0 && values[i] > values[i - 1] + tol_convex) {
      return absl::InvalidArgumentError(
          absl::StrFormat("values increase at alpha=%g", alpha[i]));
    }
    if (i > 0 && i + 1 < n) {
      const double w = (alpha[i] - alpha[i - 1]) / (alpha[i + 1] - alpha[i - 1]);
      const double chord = (1.0 - w) * values[i - 1] + w * values[i + 1];
      if (values[i] > chord + tol_convex) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "curve is not convex at alpha=%g (excess %g)", alpha[i],
            values[i] - chord));
      }
    }
  }
  return TradeoffCurve(std::move(alpha), std::move(values));
}

TradeoffCurve TradeoffCurve::FromSamples(std::vector<double> alpha,
                                         std::vector<double> values) {
  double running = 1.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    double v = values[i];
    if (!(v >= 0.0)) v = 0.0;
    v = std::min({v, 1.0 - alpha[i], running});
    values[i] = v;
    running = v;
  }
  return TradeoffCurve(std::move(alpha), std::move(values));
}

TradeoffCurve TradeoffCurve::Identity() {
  return Identity(StandardAlphaGrid());
}

TradeoffCurve TradeoffCurve::Identity(const std::vector<double>& alpha) {
  std::vector<double> values(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) values[i] = 1.0 - alpha[i];
  return TradeoffCurve(alpha, std::move(values));
}

double TradeoffCurve::operator()(double a) const {
  return Interpolate(alpha_, values_, a);
}

TradeoffCurve TradeoffCurve::ResampleTo(const std::vector<double>& alpha) const {
  std::vector<double> values(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) values[i] = (*this)(alpha[i]);
  return FromSamples(alpha, std::move(values));
}

double GaussianTradeoffValue(double mu, double alpha) {
  if (alpha <= 0.0) return 1.0;
  if (alpha >= 1.0) return 0.0;
  return NormalSf(NormalQuantile(alpha) + mu);
}

absl::StatusOr<TradeoffCurve> GaussianTradeoff(double mu) {
  if (absl::Status s = ValidateParams(1.0, mu); !s.ok()) return s;
  if (mu == 0.0) return TradeoffCurve::Identity();
  const std::vector<double>& alpha = StandardAlphaGrid();
  std::vector<double> values(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) {
    values[i] = GaussianTradeoffValue(mu, alpha[i]);
  }
  return TradeoffCurve::FromSamples(alpha, std::move(values));
}

absl::StatusOr<TradeoffCurve> SubsampledGaussianPlus(double q, double mu) {
  if (absl::Status s = ValidateParams(q, mu); !s.ok()) return s;
  if (q == 0.0 || mu == 0.0) return TradeoffCurve::Identity();
  const std::vector<double>& alpha = StandardAlphaGrid();
  std::vector<double> values(alpha.size());
  for (size_t i = 0; i < alpha.size(); ++i) {
    values[i] =
        (1.0 - q) * (1.0 - alpha[i]) + q * GaussianTradeoffValue(mu, alpha[i]);
  }
  return TradeoffCurve::FromSamples(alpha, std::move(values));
}

absl::StatusOr<TradeoffCurve> SubsampledGaussianMinus(double q, double mu) {
  absl::StatusOr<TradeoffCurve> plus = SubsampledGaussianPlus(q, mu);
  if (!plus.ok()) return plus.status();
  if (q == 0.0 || mu == 0.0) return *plus;
  return Invert(*plus);
}

TradeoffCurve Invert(const TradeoffCurve& f) {
  const std::vector<double>& a = f.alpha();
  const std::vector<double>& v = f.values();
  // Reflected graph: x = f(alpha), y = alpha, walked with x ascending. For
  // repeated x the smallest alpha wins (the generalized inverse).
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(a.size() + 2);
  y.reserve(a.size() + 2);
  for (size_t k = a.size(); k-- > 0;) {
    if (!x.empty() && v[k] <= x.back()) {
      y.back() = a[k];
      continue;
    }
    x.push_back(v[k]);
    y.push_back(a[k]);
  }
  if (x.front() > 0.0) {
    // The curve never reaches zero: a vertical piece at alpha = 1.
    x.insert(x.begin(), 0.0);
    y.insert(y.begin(), 1.0);
  }
  if (x.back() < 1.0) {
    // f(0) < 1: the inverse is zero from f(0) onwards.
    x.push_back(1.0);
    y.push_back(0.0);
  }
  std::vector<double> values(a.size());
  for (size_t i = 0; i < a.size(); ++i) values[i] = Interpolate(x, y, a[i]);
  return TradeoffCurve::FromSamples(a, std::move(values));
}

TradeoffCurve Symmetrize(const TradeoffCurve& f) {
  const TradeoffCurve inv = Invert(f);
  std::vector<double> m(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    m[i] = std::min(f.values()[i], inv.values()[i]);
  }
  return TradeoffCurve::FromSamples(f.alpha(), LowerHullValues(f.alpha(), m));
}

absl::StatusOr<PiecewiseLinear> LowerConvexEnvelope(
    std::span<const Point> points) {
  if (points.size() < 2) {
    return absl::InvalidArgumentError(
        "a convex envelope needs at least two points");
  }
  PiecewiseLinear out;
  out.x.reserve(points.size());
  std::vector<double> y;
  y.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      return absl::InvalidArgumentError("envelope points must be finite");
    }
    if (i > 0 && !(points[i].x > points[i - 1].x)) {
      return absl::InvalidArgumentError(
          "envelope abscissae must be strictly increasing");
    }
    out.x.push_back(points[i].x);
    y.push_back(points[i].y);
  }
  out.y = LowerHullValues(out.x, y);
  return out;
}

namespace {

bool DeltaFeasible(const TradeoffCurve& f1, const TradeoffCurve& f2,
                   double delta) {
  for (size_t i = 0; i < f2.size(); ++i) {
    const double a = f2.alpha()[i];
    if (a + delta > 1.0) break;
    if (f1(a + delta) - delta > f2.values()[i]) return false;
  }
  return true;
}

}  // namespace

double DeltaDivergence(const TradeoffCurve& f1, const TradeoffCurve& f2) {
  auto feasible = [&](double d) {
    return DeltaFeasible(f1, f2, d) && DeltaFeasible(f2, f1, d);
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

absl::StatusOr<BlackwellOrder> BlackwellCompare(const TradeoffCurve& f1,
                                                const TradeoffCurve& f2,
                                                double tol) {
  if (f1.alpha() != f2.alpha()) {
    return absl::InvalidArgumentError(
        "curves must share an alpha grid; resample first");
  }
  const size_t n = f1.size();
  std::vector<double> d(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (size_t i = 0; i < n; ++i) {
    d[i] = f1.values()[i] - f2.values()[i];
    lo = std::min(lo, d[i]);
    hi = std::max(hi, d[i]);
  }
  BlackwellOrder order;
  if (std::max(hi, -lo) <= tol) {
    order.kind = BlackwellOrder::Kind::kEqual;
    return order;
  }
  if (lo >= -tol) {
    order.kind = BlackwellOrder::Kind::kGreaterEq;
    return order;
  }
  if (hi <= tol) {
    order.kind = BlackwellOrder::Kind::kLessEq;
    return order;
  }
  order.kind = BlackwellOrder::Kind::kIncomparable;
  auto diff = [&](double a) { return f1(a) - f2(a); };
  int last_sign = 0;
  size_t last_index = 0;
  for (size_t i = 0; i < n; ++i) {
    const int s = d[i] > tol ? 1 : (d[i] < -tol ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double a = f1.alpha()[last_index];
      double b = f1.alpha()[i];
      const double sa = diff(a);
      while (b - a > kCrossingTol) {
        const double m = 0.5 * (a + b);
        if ((diff(m) > 0.0) == (sa > 0.0)) {
          a = m;
        } else {
          b = m;
        }
      }
      order.crossings.push_back(0.5 * (a + b));
    }
    last_sign = s;
    last_index = i;
  }
  return order;
}

const char* BlackwellKindName(BlackwellOrder::Kind kind) {
  switch (kind) {
    case BlackwellOrder::Kind::kLessEq:
      return "LessEq";
    case BlackwellOrder::Kind::kGreaterEq:
      return "GreaterEq";
    case BlackwellOrder::Kind::kEqual:
      return "Equal";
    case BlackwellOrder::Kind::kIncomparable:
      return "Incomparable";
  }
  return "Unknown";
}

bool ApproxGdpCheck(const TradeoffCurve& f, double mu, double delta) {
  for (size_t i = 0; i < f.size(); ++i) {
    const double a = f.alpha()[i];
    const double v = f.values()[i];
    const double lower =
        GaussianTradeoffValue(mu, std::min(1.0, a + delta)) - delta;
    const double upper =
        GaussianTradeoffValue(mu, std::max(0.0, a - delta)) + delta;
    if (lower > v + kBandSlack || v > upper + kBandSlack) return false;
  }
  return true;
}

}  // namespace fdp
