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

#include "fdp/compose.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/parallel.h"

namespace fdp {
namespace {

using Tails = DensityPair::Tails;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Tails kAtPlusInf{0.0, 1.0, 0.0, 1.0};
constexpr Tails kAtMinusInf{1.0, 0.0, 1.0, 0.0};

struct Mass {
  double p;
  double q;
};

// P- and Q-mass of {a < L <= b}, differenced on whichever side is small.
Mass Between(const Tails& ta, const Tails& tb) {
  const double p = ta.p_upper < tb.p_lower ? ta.p_upper - tb.p_upper
                                           : tb.p_lower - ta.p_lower;
  const double q = ta.q_upper < tb.q_lower ? ta.q_upper - tb.q_upper
                                           : tb.q_lower - ta.q_lower;
  return Mass{std::max(0.0, p), std::max(0.0, q)};
}

// Range bounds with their tails.
struct Clip {
  double lo;
  double hi;
  Tails lo_tails;
  Tails hi_tails;
};

Clip MakeClip(const DensityPair& pair, const PlrvRange& range) {
  Clip c{range.lo, range.hi, kAtMinusInf, kAtPlusInf};
  if (range.lo > -kInf) c.lo_tails = pair.PlrvTails(range.lo);
  if (range.hi < kInf) c.hi_tails = pair.PlrvTails(range.hi);
  return c;
}

// Integral over L in the clip range of g(gamma e^{-L}) dP, where g is linear
// between the grid knots x_k with values g[k] and equals g.back() beyond the
// last knot. tails_at(k) returns the tails at ell_k = ln(gamma) - ln(x_k) for
// k >= 1; ell_0 = +inf. The P-mass of the region beyond the last knot is added
// to *beyond_mass.
template <typename TailsAt>
double SumPanels(const GammaGrid& grid, const std::vector<double>& g,
                 double gamma, double lg, TailsAt tails_at, const Clip& clip,
                 double* beyond_mass) {
  const size_t m = grid.size();
  double sum = 0.0;
  double upper_ell = kInf;
  Tails upper_tails = kAtPlusInf;
  for (size_t k = 0; k + 1 < m; ++k) {
    const double lower_ell = lg - grid.log_gamma(k + 1);
    const Tails& lower_tails = tails_at(k + 1);
    double b = upper_ell;
    Tails tb = upper_tails;
    upper_ell = lower_ell;
    upper_tails = lower_tails;
    if (b <= clip.lo) return sum;
    double a = lower_ell;
    Tails ta = lower_tails;
    if (a >= clip.hi) continue;
    if (a < clip.lo) {
      a = clip.lo;
      ta = clip.lo_tails;
    }
    if (b > clip.hi) {
      b = clip.hi;
      tb = clip.hi_tails;
    }
    const Mass mass = Between(ta, tb);
    if (mass.p == 0.0 && mass.q == 0.0) continue;
    const double x0 = grid.gamma(k);
    const double x1 = grid.gamma(k + 1);
    const double slope = (g[k + 1] - g[k]) / (x1 - x0);
    sum += g[k] * mass.p + slope * (gamma * mass.q - x0 * mass.p);
  }
  // Beyond the last knot: L <= ln(gamma) - ln(x_max).
  if (upper_ell > clip.lo) {
    Tails tb = upper_tails;
    if (upper_ell > clip.hi) tb = clip.hi_tails;
    const Tails ta = clip.lo > -kInf ? clip.lo_tails : kAtMinusInf;
    const Mass mass = Between(ta, tb);
    sum += g.back() * mass.p;
    *beyond_mass += mass.p;
  }
  return sum;
}

// Excess of the first factor alone: H1(gamma) - max(1 - gamma, 0).
double PairExcess(const Tails& t, double gamma) {
  const double e = gamma >= 1.0 ? t.p_upper - gamma * t.q_upper
                                : gamma * t.q_lower - t.p_lower;
  return std::max(0.0, e);
}

absl::Status BeyondGridError(const PrivacyProfile& h2) {
  return absl::OutOfRangeError(absl::StrFormat(
      "likelihood ratio reaches beyond the inner profile's grid where its "
      "value %.3g exceeds the tail tolerance %.1g",
      h2.TailExcess(), kTailTol));
}

absl::StatusOr<double> ExcessAt(const DensityPair& pair1,
                                const PrivacyProfile& h2, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gamma must be finite and non-negative, got %g", gamma));
  }
  if (gamma == 0.0) return 0.0;
  if (pair1.identical()) return h2.Excess(gamma);
  const GammaGrid& grid = h2.grid();
  const double lg = std::log(gamma);
  std::vector<Tails> tails(grid.size());
  for (size_t k = 1; k < grid.size(); ++k) {
    tails[k] = pair1.PlrvTails(lg - grid.log_gamma(k));
  }
  double beyond = 0.0;
  const Clip clip = MakeClip(pair1, PlrvRange());
  const double sum = SumPanels(
      grid, h2.excess(), gamma, lg,
      [&tails](size_t k) -> const Tails& { return tails[k]; }, clip, &beyond);
  if (beyond > 0.0 && h2.TailExcess() > kTailTol) return BeyondGridError(h2);
  return std::max(0.0, PairExcess(pair1.PlrvTails(lg), gamma) + sum);
}

// Tails at every lattice offset d * step, |d| <= 2 * max_lattice. Every
// level-set boundary ln(gamma_j) - ln(gamma_k) is such an offset.
struct TailCache {
  int64_t span;
  std::vector<Tails> tails;
  const Tails& at(int64_t d) const { return tails[d + 2 * span]; }
};

TailCache BuildTailCache(const DensityPair& pair1, const GammaGrid& grid) {
  TailCache c{grid.max_lattice(), {}};
  c.tails.resize(4 * c.span + 1);
  ParallelFor(c.tails.size(), [&](size_t idx) {
    const int64_t d = static_cast<int64_t>(idx) - 2 * c.span;
    c.tails[idx] = pair1.PlrvTails(d * grid.step());
  });
  return c;
}

}  // namespace

absl::StatusOr<PrivacyProfile> TensorProfiles(const DensityPair& pair1,
                                              const PrivacyProfile& h2) {
  if (pair1.identical()) return h2;
  const GammaGrid& grid = h2.grid();
  const size_t m = grid.size();
  const TailCache cache = BuildTailCache(pair1, grid);
  std::vector<double> excess(m, 0.0);
  std::vector<double> beyond(m, 0.0);
  const Clip clip = MakeClip(pair1, PlrvRange());
  ParallelFor(m - 1, [&](size_t jm) {
    const size_t j = jm + 1;
    const int64_t nj = grid.lattice(j);
    const double gamma = grid.gamma(j);
    const double lg = grid.log_gamma(j);
    auto tails_at = [&](size_t k) -> const Tails& {
      return cache.at(nj - grid.lattice(k));
    };
    const double sum =
        SumPanels(grid, h2.excess(), gamma, lg, tails_at, clip, &beyond[j]);
    excess[j] = PairExcess(cache.at(nj), gamma) + sum;
  });
  if (h2.TailExcess() > kTailTol) {
    for (double b : beyond) {
      if (b > 0.0) return BeyondGridError(h2);
    }
  }
  PrivacyProfile out =
      PrivacyProfile::FromExcess(h2.grid_ptr(), std::move(excess));
  if (out.TailExcess() > kTailTol) {
    return absl::OutOfRangeError(absl::StrFormat(
        "gamma grid too short: tensor profile is %.3g at gamma_max",
        out.TailExcess()));
  }
  return out;
}

absl::StatusOr<double> TensorProfileAt(const DensityPair& pair1,
                                       const PrivacyProfile& h2, double gamma) {
  absl::StatusOr<double> e = ExcessAt(pair1, h2, gamma);
  if (!e.ok()) return e.status();
  return std::min(1.0, (gamma < 1.0 ? 1.0 - gamma : 0.0) + *e);
}

absl::StatusOr<double> RestrictedTensorAt(const DensityPair& pair1,
                                          const PrivacyProfile& h2,
                                          double gamma, PlrvRange range) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gamma must be finite and non-negative, got %g", gamma));
  }
  if (!(range.lo < range.hi)) return 0.0;
  const Clip clip = MakeClip(pair1, range);
  if (gamma == 0.0) return Between(clip.lo_tails, clip.hi_tails).p;
  if (pair1.identical()) {
    // L = 0 everywhere: the whole mass sits at one PLRV value.
    if (!(range.lo < 0.0 && 0.0 <= range.hi)) return 0.0;
    return h2(gamma);
  }
  const GammaGrid& grid = h2.grid();
  const double lg = std::log(gamma);
  std::vector<Tails> tails(grid.size());
  for (size_t k = 1; k < grid.size(); ++k) {
    tails[k] = pair1.PlrvTails(lg - grid.log_gamma(k));
  }
  double beyond = 0.0;
  const double excess_part = SumPanels(
      grid, h2.excess(), gamma, lg,
      [&tails](size_t k) -> const Tails& { return tails[k]; }, clip, &beyond);
  if (beyond > 0.0 && h2.TailExcess() > kTailTol) return BeyondGridError(h2);
  // Hinge part: integral of (1 - gamma e^{-L}) over {L > ln gamma} in range.
  double hinge = 0.0;
  const double a = std::max(lg, range.lo);
  if (a < range.hi) {
    const Tails ta = a == range.lo ? clip.lo_tails : pair1.PlrvTails(a);
    const Mass mass = Between(ta, clip.hi_tails);
    hinge = std::max(0.0, mass.p - gamma * mass.q);
  }
  return hinge + excess_part;
}

absl::StatusOr<std::vector<double>> RestrictedTensorValues(
    const DensityPair& pair1, const PrivacyProfile& h2, PlrvRange range) {
  const GammaGrid& grid = h2.grid();
  const size_t m = grid.size();
  std::vector<double> values(m, 0.0);
  if (!(range.lo < range.hi)) return values;
  const Clip clip = MakeClip(pair1, range);
  values[0] = Between(clip.lo_tails, clip.hi_tails).p;
  if (pair1.identical()) {
    if (!(range.lo < 0.0 && 0.0 <= range.hi)) return std::vector<double>(m);
    return h2.Values();
  }
  const TailCache cache = BuildTailCache(pair1, grid);
  std::vector<double> beyond(m, 0.0);
  ParallelFor(m - 1, [&](size_t jm) {
    const size_t j = jm + 1;
    const int64_t nj = grid.lattice(j);
    const double gamma = grid.gamma(j);
    const double lg = grid.log_gamma(j);
    auto tails_at = [&](size_t k) -> const Tails& {
      return cache.at(nj - grid.lattice(k));
    };
    const double sum =
        SumPanels(grid, h2.excess(), gamma, lg, tails_at, clip, &beyond[j]);
    double hinge = 0.0;
    const double a = std::max(lg, range.lo);
    if (a < range.hi) {
      const Tails& ta = a == range.lo ? clip.lo_tails : cache.at(nj);
      const Mass mass = Between(ta, clip.hi_tails);
      hinge = std::max(0.0, mass.p - gamma * mass.q);
    }
    values[j] = hinge + sum;
  });
  if (h2.TailExcess() > kTailTol) {
    for (double b : beyond) {
      if (b > 0.0) return BeyondGridError(h2);
    }
  }
  return values;
}

absl::StatusOr<TradeoffCurve> TensorCurves(const DensityPair& pair1,
                                           const TradeoffCurve& f2) {
  const PrivacyProfile h2 = TradeoffToProfile(f2);
  absl::StatusOr<PrivacyProfile> h = TensorProfiles(pair1, h2);
  if (!h.ok()) return h.status();
  return ProfileToTradeoff(*h, f2.alpha());
}

double GdpCompose(std::span<const double> mus) {
  double total = 0.0;
  for (double mu : mus) total = std::hypot(total, mu);
  return total;
}

absl::StatusOr<PrivacyProfile> ComposeProfile(
    std::span<const DensityPair> pairs, std::shared_ptr<const GammaGrid> grid) {
  if (pairs.empty()) return PrivacyProfile::Identity(std::move(grid));
  absl::StatusOr<PrivacyProfile> h = ProfileFromPair(pairs.back(), grid);
  if (!h.ok()) return h.status();
  for (size_t i = pairs.size() - 1; i-- > 0;) {
    h = TensorProfiles(pairs[i], *h);
    if (!h.ok()) return h.status();
  }
  return h;
}

absl::StatusOr<ComposedProfile> ComposePairs(
    std::span<const DensityPair> pairs, std::shared_ptr<const GammaGrid> grid) {
  if (pairs.empty()) {
    return absl::InvalidArgumentError("a composition needs at least one factor");
  }
  absl::StatusOr<PrivacyProfile> h = ComposeProfile(pairs, std::move(grid));
  if (!h.ok()) return h.status();
  std::vector<std::string> provenance;
  for (const DensityPair& p : pairs) provenance.push_back(p.Describe());
  return ComposedProfile{*std::move(h), pairs.front(), std::move(provenance)};
}

absl::StatusOr<ChainCheckResult> BlackwellChainCheck(
    std::span<const TradeoffCurve> family, double tol) {
  if (family.empty()) {
    return absl::InvalidArgumentError("the family must contain a curve");
  }
  ChainCheckResult result;
  for (size_t i = 0; i < family.size(); ++i) {
    for (size_t j = i + 1; j < family.size(); ++j) {
      absl::StatusOr<BlackwellOrder> order =
          BlackwellCompare(family[i], family[j], tol);
      if (!order.ok()) return order.status();
      if (order->kind == BlackwellOrder::Kind::kIncomparable) {
        result.chain = false;
        result.violations.push_back({i, j, order->crossings});
      }
    }
  }
  return result;
}

}  // namespace fdp
