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
#include <random>
#include <vector>

#include "fdp/curves.h"
#include "fdp/density_pair.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fdp {
namespace {

using testing::Pdf;

double SupDiff(const TradeoffCurve& f, const TradeoffCurve& g) {
  double d = 0.0;
  for (double a : f.alpha()) d = std::max(d, std::abs(f(a) - g(a)));
  return d;
}

double SupDiff(const PrivacyProfile& a, const PrivacyProfile& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.value(i) - b.value(i)));
  }
  return d;
}

void ExpectValidProfile(const PrivacyProfile& h) {
  EXPECT_EQ(h.value(0), 1.0);
  for (size_t i = 0; i < h.size(); ++i) {
    const double g = h.gamma(i);
    ASSERT_GE(h.value(i), std::max(1.0 - g, 0.0) - 1e-12) << g;
    ASSERT_LE(h.value(i), 1.0);
    if (i > 0) ASSERT_LE(h.value(i), h.value(i - 1) + 1e-15) << g;
  }
}

TEST(HockeyStickTest, TrivialCases) {
  auto id = DensityPair::Gaussian(0.0);
  auto g = DensityPair::Gaussian(1.0);
  ASSERT_TRUE(id.ok() && g.ok());
  auto v = HockeyStick(*id, 1.0);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR(*v, 0.0, 1e-12);
  v = HockeyStick(*g, 0.0);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR(*v, 1.0, 1e-12);
  EXPECT_FALSE(HockeyStick(*g, NAN).ok());
  EXPECT_FALSE(HockeyStick(*g, -1.0).ok());
}

TEST(HockeyStickTest, GaussianClosedFormAgreesWithRiemannSum) {
  // Validate the closed form itself on a 1e6-point grid, then the library
  // against the closed form.
  const double mu = 1.0;
  const double eps = 0.5;
  const double gamma = std::exp(eps);
  const double riemann = testing::Riemann(
      [&](double y) {
        return std::max(Pdf(y, mu) - gamma * Pdf(y), 0.0);
      },
      -12.0, 13.0, 1000000);
  const double closed = testing::GaussianDelta(mu, eps);
  EXPECT_NEAR(riemann, closed, 1e-9);
  auto pair = DensityPair::Gaussian(mu);
  ASSERT_TRUE(pair.ok());
  auto v = HockeyStick(*pair, gamma);
  ASSERT_TRUE(v.ok());
  EXPECT_NEAR(*v, closed, 1e-10);
}

TEST(HockeyStickTest, MixtureAgreesWithRiemannSum) {
  auto pair = DensityPair::Mixture(0.5, 1.3);
  ASSERT_TRUE(pair.ok());
  for (double gamma : {0.3, 1.0, 1.363, 3.0}) {
    const double riemann = testing::Riemann(
        [&](double y) {
          const double p = 0.5 * Pdf(y) + 0.5 * Pdf(y, 1.3);
          return std::max(p - gamma * Pdf(y), 0.0);
        },
        -14.0, 15.0, 1000000);
    auto v = HockeyStick(*pair, gamma);
    ASSERT_TRUE(v.ok());
    EXPECT_NEAR(*v, riemann, 1e-9) << gamma;
  }
}

TEST(HockeyStickTest, SwapSymmetry) {
  for (double q : {0.3, 1.0}) {
    auto pair = DensityPair::Mixture(q, 1.7);
    ASSERT_TRUE(pair.ok());
    const DensityPair swapped = pair->Swapped();
    for (double gamma : {0.05, 0.5, 1.0, 2.0, 20.0}) {
      auto lhs = HockeyStick(swapped, gamma);
      auto rhs = HockeyStick(*pair, 1.0 / gamma);
      ASSERT_TRUE(lhs.ok() && rhs.ok());
      EXPECT_NEAR(*lhs, 1.0 - gamma + gamma * *rhs, 1e-10 * (1 + gamma))
          << q << " " << gamma;
    }
  }
}

TEST(ProfileFromPairTest, IdenticalPairGivesIdentity) {
  auto id = DensityPair::Mixture(0.0, 2.0);
  ASSERT_TRUE(id.ok());
  auto h = ProfileFromPair(*id);
  ASSERT_TRUE(h.ok());
  for (size_t i = 0; i < h->size(); ++i) {
    ASSERT_NEAR(h->value(i), std::max(1.0 - h->gamma(i), 0.0), 1e-15);
  }
}

TEST(ProfileFromPairTest, GaussianMatchesClosedFormAndCurve) {
  auto pair = DensityPair::Gaussian(1.3);
  ASSERT_TRUE(pair.ok());
  auto h = ProfileFromPair(*pair);
  ASSERT_TRUE(h.ok());
  ExpectValidProfile(*h);
  for (size_t i = 1; i < h->size(); i += 13) {
    const double eps = std::log(h->gamma(i));
    ASSERT_NEAR(h->value(i), testing::GaussianDelta(1.3, eps), 1e-10) << eps;
  }
  auto f = ProfileToTradeoff(*h);
  auto g = GaussianTradeoff(1.3);
  ASSERT_TRUE(f.ok() && g.ok());
  EXPECT_LT(SupDiff(*f, *g), 1e-3);
}

TEST(ProfileFromPairTest, MixtureProfileIsValid) {
  auto pair = DensityPair::Mixture(0.5, 1.3);
  ASSERT_TRUE(pair.ok());
  auto h = ProfileFromPair(*pair);
  ASSERT_TRUE(h.ok());
  ExpectValidProfile(*h);
  auto direct = HockeyStick(*pair, 1.363);
  auto interp = (*h)(1.363);
  ASSERT_TRUE(direct.ok() && interp.ok());
  EXPECT_NEAR(*direct, *interp, 1e-5);
}

TEST(TradeoffToProfileTest, Examples) {
  const PrivacyProfile id = TradeoffToProfile(TradeoffCurve::Identity());
  for (size_t i = 0; i < id.size(); ++i) {
    ASSERT_NEAR(id.value(i), std::max(1.0 - id.gamma(i), 0.0), 1e-12);
  }
  for (double mu : {0.5, 1.3, 3.0}) {
    auto g = GaussianTradeoff(mu);
    auto pair = DensityPair::Gaussian(mu);
    ASSERT_TRUE(g.ok() && pair.ok());
    auto exact = ProfileFromPair(*pair);
    ASSERT_TRUE(exact.ok());
    EXPECT_LT(SupDiff(TradeoffToProfile(*g), *exact), 1e-3) << mu;
  }
}

TEST(TradeoffToProfileTest, SampledCurveErrorWithinChordGap) {
  // The sampled curve's interpolant lies above the true curve. Since
  // H(gamma) = sup_a 1 - a - gamma f(a), its profile is below the true one by
  // at most gamma times the largest chord gap. The true curve of
  // the mixture pair is traced by thresholds t: alpha = P(Y <= t) and
  // beta = Q(Y > t).
  const double q = 0.5, mu = 2.25;
  auto sg = SubsampledGaussianMinus(q, mu);
  auto pair = DensityPair::Mixture(q, mu);
  ASSERT_TRUE(sg.ok() && pair.ok());
  double gap = 0.0;
  for (double t = -10.0; t <= 14.0; t += 1e-4) {
    const double a = (1 - q) * testing::Phi(t) + q * testing::Phi(t - mu);
    gap = std::max(gap, (*sg)(a) - testing::PhiSf(t));
  }
  auto exact = ProfileFromPair(*pair);
  ASSERT_TRUE(exact.ok());
  const PrivacyProfile h = TradeoffToProfile(*sg);
  for (size_t i = 0; i < h.size(); ++i) {
    const double d = exact->value(i) - h.value(i);
    ASSERT_GE(d, -1e-9) << h.gamma(i);
    ASSERT_LE(d, h.gamma(i) * gap + 1e-9) << h.gamma(i);
  }
  EXPECT_LT(gap, 2e-5);
}

TEST(ProfileToTradeoffTest, Examples) {
  auto id = ProfileToTradeoff(PrivacyProfile::Identity());
  ASSERT_TRUE(id.ok());
  EXPECT_LT(SupDiff(*id, TradeoffCurve::Identity()), 1e-12);
  auto pair = DensityPair::Gaussian(2.0);
  ASSERT_TRUE(pair.ok());
  auto h = ProfileFromPair(*pair);
  ASSERT_TRUE(h.ok());
  auto f = ProfileToTradeoff(*h);
  auto g = GaussianTradeoff(2.0);
  ASSERT_TRUE(f.ok() && g.ok());
  EXPECT_LT(SupDiff(*f, *g), 1e-3);
}

TEST(ProfileToTradeoffTest, ExtremeCurveRoundTrip) {
  auto f = SubsampledGaussianMinus(0.5, 10.0);
  ASSERT_TRUE(f.ok());
  auto back = ProfileToTradeoff(TradeoffToProfile(*f));
  ASSERT_TRUE(back.ok()) << back.status();
  // Only support lines with grid slopes survive the round trip. Between the
  // tangent points t_k > t_{k+1} of consecutive slopes -gamma_k, -gamma_{k+1}
  // the curve sits inside a triangle of height at most
  // (gamma_{k+1} - gamma_k) (t_k - t_{k+1}) / 4.
  const auto& a = f->alpha();
  const auto& v = f->values();
  const GammaGrid& grid = *GammaGrid::Standard();
  std::vector<double> tangent(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    const double g = grid.gamma(k);
    size_t best = 0;
    for (size_t i = 1; i < a.size(); ++i) {
      if (v[i] + g * a[i] < v[best] + g * a[best]) best = i;
    }
    tangent[k] = a[best];
  }
  double bound = 0.0;
  for (size_t k = 0; k + 1 < grid.size(); ++k) {
    bound = std::max(bound, (grid.gamma(k + 1) - grid.gamma(k)) *
                                (tangent[k] - tangent[k + 1]) / 4);
  }
  const double err = SupDiff(*back, *f);
  EXPECT_LE(err, bound + 1e-12);
  // The conversion is conservative: the recovered curve is never above.
  for (double x : a) ASSERT_LE((*back)(x), (*f)(x) + 1e-12) << x;
}

TEST(ProfileToTradeoffTest, RejectsTruncatedTail) {
  // A profile whose last value is far above the tail tolerance.
  auto grid = GammaGrid::Standard();
  std::vector<double> h(grid->size());
  for (size_t i = 0; i < h.size(); ++i) {
    h[i] = std::max(1.0 - grid->gamma(i), 0.0);
  }
  h.back() = 1e-3;
  for (size_t i = h.size() - 2; i > 0 && h[i] < h[i + 1]; --i) h[i] = h[i + 1];
  auto p = PrivacyProfile::Create(grid, h, 1e-2);
  ASSERT_TRUE(p.ok()) << p.status();
  auto f = ProfileToTradeoff(*p);
  EXPECT_FALSE(f.ok());
  EXPECT_FALSE((*p)(1e300).ok());
}

TEST(DualityTest, RandomCurvesRoundTrip) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uq(0.05, 1.0);
  std::uniform_real_distribution<double> umu(0.1, 3.0);
  for (int trial = 0; trial < 8; ++trial) {
    absl::StatusOr<TradeoffCurve> f;
    switch (trial % 3) {
      case 0:
        f = GaussianTradeoff(umu(rng));
        break;
      case 1:
        f = SubsampledGaussianPlus(uq(rng), umu(rng));
        break;
      default:
        f = SubsampledGaussianMinus(uq(rng), umu(rng));
    }
    ASSERT_TRUE(f.ok());
    const PrivacyProfile h = TradeoffToProfile(*f);
    ExpectValidProfile(h);
    auto back = ProfileToTradeoff(h);
    ASSERT_TRUE(back.ok());
    EXPECT_LT(SupDiff(*back, *f), 1e-3) << trial;
    const PrivacyProfile h2 = TradeoffToProfile(*back);
    EXPECT_LT(SupDiff(h2, h), 1e-3) << trial;
  }
}

TEST(DualityTest, OrderTransfer) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uq(0.05, 1.0);
  std::uniform_real_distribution<double> umu(0.1, 3.0);
  int greater = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto f1 = SubsampledGaussianPlus(uq(rng), umu(rng));
    auto f2 = trial % 2 == 0 ? GaussianTradeoff(umu(rng))
                             : SubsampledGaussianPlus(uq(rng), umu(rng));
    ASSERT_TRUE(f1.ok() && f2.ok());
    auto order = BlackwellCompare(*f1, *f2, 1e-9);
    ASSERT_TRUE(order.ok());
    const PrivacyProfile h1 = TradeoffToProfile(*f1);
    const PrivacyProfile h2 = TradeoffToProfile(*f2);
    bool dominated = true;
    for (size_t i = 0; i < h1.size(); ++i) {
      if (h1.value(i) > h2.value(i) + 1e-9) dominated = false;
    }
    const bool ge = order->kind == BlackwellOrder::Kind::kGreaterEq ||
                    order->kind == BlackwellOrder::Kind::kEqual;
    EXPECT_EQ(ge, dominated) << trial;
    greater += ge ? 1 : 0;
  }
  EXPECT_GT(greater, 0);
}

TEST(SymmetrizeProfileTest, Examples) {
  auto pair = DensityPair::Gaussian(1.0);
  ASSERT_TRUE(pair.ok());
  auto h = ProfileFromPair(*pair);
  ASSERT_TRUE(h.ok());
  EXPECT_LT(SupDiff(SymmetrizeProfile(*h), *h), 1e-10);
  const PrivacyProfile id = PrivacyProfile::Identity();
  EXPECT_LT(SupDiff(SymmetrizeProfile(id), id), 1e-15);

  auto mix = DensityPair::Mixture(0.5, 1.3);
  ASSERT_TRUE(mix.ok());
  auto hm = ProfileFromPair(*mix);
  ASSERT_TRUE(hm.ok());
  const PrivacyProfile s = SymmetrizeProfile(*hm);
  EXPECT_LT(SupDiff(SymmetrizeProfile(s), s), 1e-15);
  const PrivacyProfile hat = HatProfile(s);
  EXPECT_LT(SupDiff(hat, s), 1e-12);
  for (size_t i = 0; i < s.size(); ++i) {
    ASSERT_GE(s.value(i), hm->value(i));
  }
  // The hat of the mixture is the profile of the swapped pair.
  auto swapped = ProfileFromPair(mix->Swapped());
  ASSERT_TRUE(swapped.ok());
  EXPECT_LT(SupDiff(HatProfile(*hm), *swapped), 1e-9);
}

TEST(EpsilonDeltaTest, Examples) {
  auto d = EpsilonDelta(PrivacyProfile::Identity(), 0.0);
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(*d, 0.0);
  auto pair = DensityPair::Gaussian(0.314);
  ASSERT_TRUE(pair.ok());
  auto h = ProfileFromPair(*pair);
  ASSERT_TRUE(h.ok());
  d = EpsilonDelta(*h, 1.0);
  ASSERT_TRUE(d.ok());
  // Linear interpolation of the convex profile between the knots bracketing
  // e^1 overestimates by at most (knot gap)^2 / 8 times the largest H''.
  // For the Gaussian pair H''(gamma) = phi(-ln(gamma) / mu - mu / 2) /
  // (gamma mu).
  {
    const double mu = 0.314;
    const size_t k = h->grid().Locate(std::exp(1.0));
    const double g0 = h->gamma(k), g1 = h->gamma(k + 1);
    ASSERT_LE(g0, std::exp(1.0));
    ASSERT_GE(g1, std::exp(1.0));
    double curvature = 0.0;
    for (double g = g0; g <= g1; g += (g1 - g0) / 100) {
      curvature = std::max(
          curvature, Pdf(-std::log(g) / mu - mu / 2) / (g * mu));
    }
    const double exact = testing::GaussianDelta(mu, 1.0);
    EXPECT_GE(*d, exact - 1e-12);
    EXPECT_LE(*d, exact + (g1 - g0) * (g1 - g0) / 8 * curvature + 1e-12);
  }
  double prev = 1.0;
  for (double eps = -2.0; eps <= 9.0; eps += 0.25) {
    auto v = EpsilonDelta(*h, eps);
    ASSERT_TRUE(v.ok());
    EXPECT_LE(*v, prev);
    prev = *v;
  }
  EXPECT_FALSE(EpsilonDelta(*h, 500.0).ok());
}

TEST(EpsilonForDeltaTest, InvertsGaussianDelta) {
  auto pair = DensityPair::Gaussian(0.314);
  ASSERT_TRUE(pair.ok());
  for (double delta : {1e-7, 1e-5, 1e-3}) {
    auto eps = EpsilonForDelta(*pair, delta);
    ASSERT_TRUE(eps.ok());
    EXPECT_NEAR(testing::GaussianDelta(0.314, *eps) / delta, 1.0, 1e-6);
  }
}

TEST(MaxProfileTest, PointwiseMaximum) {
  auto a = DensityPair::Gaussian(1.0);
  auto b = DensityPair::Mixture(0.5, 3.0);
  ASSERT_TRUE(a.ok() && b.ok());
  auto ha = ProfileFromPair(*a);
  auto hb = ProfileFromPair(*b);
  ASSERT_TRUE(ha.ok() && hb.ok());
  auto m = MaxProfile(*ha, *hb);
  ASSERT_TRUE(m.ok());
  for (size_t i = 0; i < m->size(); ++i) {
    ASSERT_EQ(m->value(i), std::max(ha->value(i), hb->value(i)));
  }
}

}  // namespace
}  // namespace fdp
