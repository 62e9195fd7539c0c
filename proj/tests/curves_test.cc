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
#include <random>
#include <vector>

#include "fdp/grid.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fdp {
namespace {

using testing::Phi;
using testing::PhiSf;

double SupDiff(const TradeoffCurve& f, const TradeoffCurve& g) {
  double d = 0.0;
  for (double a : f.alpha()) d = std::max(d, std::abs(f(a) - g(a)));
  return d;
}

void ExpectValidCurve(const TradeoffCurve& f) {
  const auto& a = f.alpha();
  const auto& v = f.values();
  EXPECT_LE(v.front(), 1.0);
  EXPECT_GE(v.back(), 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    ASSERT_LE(v[i], 1.0 - a[i] + 1e-9) << a[i];
    if (i > 0) ASSERT_LE(v[i], v[i - 1]) << a[i];
    if (i > 0 && i + 1 < a.size()) {
      const double w = (a[i] - a[i - 1]) / (a[i + 1] - a[i - 1]);
      const double chord = v[i - 1] + w * (v[i + 1] - v[i - 1]);
      ASSERT_LE(v[i], chord + 1e-9) << a[i];
    }
  }
}

TEST(TradeoffCurveTest, ConstructorsProduceValidCurves) {
  ExpectValidCurve(TradeoffCurve::Identity());
  for (double mu : {0.0, 0.3, 1.0, 4.0}) {
    auto g = GaussianTradeoff(mu);
    ASSERT_TRUE(g.ok());
    ExpectValidCurve(*g);
    EXPECT_EQ((*g)(0.0), 1.0);
    EXPECT_EQ((*g)(1.0), 0.0);
  }
  for (double q : {0.1, 0.5, 0.9}) {
    for (double mu : {0.5, 2.25, 10.0}) {
      auto p = SubsampledGaussianPlus(q, mu);
      auto m = SubsampledGaussianMinus(q, mu);
      ASSERT_TRUE(p.ok() && m.ok());
      ExpectValidCurve(*p);
      ExpectValidCurve(*m);
    }
  }
}

TEST(TradeoffCurveTest, CreateRejectsInvalidSamples) {
  EXPECT_FALSE(TradeoffCurve::Create({0.0, 0.5, 1.0}, {1.0, 0.6, 0.0}).ok());
  EXPECT_FALSE(TradeoffCurve::Create({0.0, 0.5, 1.0}, {1.0, 0.2, 0.3}).ok());
  EXPECT_FALSE(TradeoffCurve::Create({0.0, 1.0}, {1.1, 0.0}).ok());
  EXPECT_FALSE(TradeoffCurve::Create({0.0, 0.5, 0.4, 1.0},
                                     {1.0, 0.2, 0.1, 0.0})
                   .ok());
  EXPECT_TRUE(TradeoffCurve::Create({0.0, 0.5, 1.0}, {1.0, 0.2, 0.0}).ok());
}

TEST(GaussianTradeoffTest, DomainErrors) {
  EXPECT_FALSE(GaussianTradeoff(-1.0).ok());
  EXPECT_FALSE(GaussianTradeoff(NAN).ok());
  EXPECT_FALSE(SubsampledGaussianPlus(1.5, 1.0).ok());
  EXPECT_FALSE(SubsampledGaussianMinus(-0.1, 1.0).ok());
}

TEST(GaussianTradeoffTest, ZeroShiftIsIdentity) {
  auto g = GaussianTradeoff(0.0);
  ASSERT_TRUE(g.ok());
  for (double a : g->alpha()) ASSERT_NEAR((*g)(a), 1.0 - a, 1e-15);
}

TEST(GaussianTradeoffTest, MatchesThresholdScan) {
  // Reject N(0,1) when y > t: alpha = 1 - Phi(t), beta = Phi(t - mu).
  for (double mu : {0.5, 1.0, 2.0}) {
    for (double target : {0.05, 0.3, 0.5, 0.8}) {
      const double scan = testing::ThresholdScan(
          [](double t) { return PhiSf(-t); },
          [mu](double t) { return Phi(-t - mu); }, -10.0, 10.0, target,
          2000000);
      EXPECT_NEAR(GaussianTradeoffValue(mu, target), scan, 1e-7)
          << mu << " " << target;
    }
  }
}

TEST(SubsampledGaussianTest, EndpointsAndLimits) {
  auto id = SubsampledGaussianPlus(0.0, 3.0);
  auto full = SubsampledGaussianPlus(1.0, 1.0);
  auto g1 = GaussianTradeoff(1.0);
  auto minus_full = SubsampledGaussianMinus(1.0, 1.0);
  auto minus_id = SubsampledGaussianMinus(0.0, 1.0);
  auto half = SubsampledGaussianPlus(0.5, 1.0);
  ASSERT_TRUE(id.ok() && full.ok() && g1.ok() && minus_full.ok() &&
              minus_id.ok() && half.ok());
  EXPECT_LT(SupDiff(*id, TradeoffCurve::Identity()), 1e-15);
  EXPECT_LT(SupDiff(*full, *g1), 1e-15);
  EXPECT_LT(SupDiff(*minus_full, *g1), 2e-4);
  EXPECT_LT(SupDiff(*minus_id, TradeoffCurve::Identity()), 1e-12);
  EXPECT_EQ((*half)(0.0), 1.0);
}

TEST(SubsampledGaussianTest, MinusMatchesMixtureThresholdScan) {
  // T[P, Q] with P = 0.5 N(0,1) + 0.5 N(1.3,1), Q = N(0,1). The likelihood
  // ratio q/p falls in y, so the optimal test rejects P for y < t.
  const double q = 0.5;
  const double mu = 1.3;
  auto f = SubsampledGaussianMinus(q, mu);
  ASSERT_TRUE(f.ok());
  auto alpha = [&](double t) { return (1 - q) * Phi(t) + q * Phi(t - mu); };
  auto beta = [](double t) { return PhiSf(t); };
  for (double target : {0.01, 0.1, 0.25, 0.5, 0.75, 0.95}) {
    const double scan =
        testing::ThresholdScan(alpha, beta, -12.0, 14.0, target, 2000000);
    EXPECT_NEAR((*f)(target), scan, 2e-4) << target;
  }
}

TEST(SubsampledGaussianTest, PlusIsMonotoneInRateAndShift) {
  const std::vector<double> qs = {0.0, 0.1, 0.3, 0.6, 1.0};
  const std::vector<double> mus = {0.0, 0.5, 1.0, 2.0, 5.0};
  for (size_t i = 0; i < qs.size(); ++i) {
    for (size_t j = 0; j < mus.size(); ++j) {
      auto base = SubsampledGaussianPlus(qs[i], mus[j]);
      ASSERT_TRUE(base.ok());
      if (i + 1 < qs.size()) {
        auto next = SubsampledGaussianPlus(qs[i + 1], mus[j]);
        for (double a : base->alpha()) ASSERT_LE((*next)(a), (*base)(a) + 1e-15);
      }
      if (j + 1 < mus.size()) {
        auto next = SubsampledGaussianPlus(qs[i], mus[j + 1]);
        for (double a : base->alpha()) ASSERT_LE((*next)(a), (*base)(a) + 1e-15);
      }
    }
  }
}

TEST(InvertTest, InvolutionAndFixedPoints) {
  const TradeoffCurve id = TradeoffCurve::Identity();
  EXPECT_LT(SupDiff(Invert(id), id), 1e-12);
  auto g = GaussianTradeoff(1.7);
  ASSERT_TRUE(g.ok());
  EXPECT_LT(SupDiff(Invert(*g), *g), 2e-4);
  auto sg = SubsampledGaussianPlus(0.5, 2.0);
  ASSERT_TRUE(sg.ok());
  EXPECT_LT(SupDiff(Invert(Invert(*sg)), *sg), 2 * kGridTol);
  // The reflected graph: f(f^{-1}(a)) = a where f^{-1}(a) > 0.
  const TradeoffCurve inv = Invert(*sg);
  for (double a : {0.05, 0.2, 0.4}) {
    EXPECT_NEAR((*sg)(inv(a)), a, 1e-4);
  }
}

TEST(SymmetrizeTest, FixedPointsAndSymmetry) {
  auto g = GaussianTradeoff(1.0);
  ASSERT_TRUE(g.ok());
  EXPECT_LT(SupDiff(Symmetrize(*g), *g), 2e-4);
  EXPECT_LT(SupDiff(Symmetrize(TradeoffCurve::Identity()),
                    TradeoffCurve::Identity()),
            1e-12);
  auto f = SubsampledGaussianMinus(0.5, 1.3);
  ASSERT_TRUE(f.ok());
  const TradeoffCurve s = Symmetrize(*f);
  const TradeoffCurve inv = Invert(*f);
  ExpectValidCurve(s);
  EXPECT_LT(SupDiff(Invert(s), s), 2 * kGridTol);
  EXPECT_LT(SupDiff(Symmetrize(s), s), 2 * kGridTol);
  for (double a : s.alpha()) {
    ASSERT_LE(s(a), std::min((*f)(a), inv(a)) + 1e-12);
  }
  // Brute-force convexity of the sampled envelope.
  const auto& a = s.alpha();
  for (size_t i = 1; i + 1 < a.size(); i += 7) {
    const double w = (a[i] - a[i - 1]) / (a[i + 1] - a[i - 1]);
    ASSERT_LE(s.values()[i],
              s.values()[i - 1] + w * (s.values()[i + 1] - s.values()[i - 1]) +
                  1e-12);
  }
}

TEST(LowerConvexEnvelopeTest, Examples) {
  std::vector<Point> convex = {{0, 1}, {0.25, 0.5}, {0.5, 0.2}, {1, 0}};
  auto e = LowerConvexEnvelope(convex);
  ASSERT_TRUE(e.ok());
  for (const Point& p : convex) EXPECT_NEAR((*e)(p.x), p.y, 1e-15);

  std::vector<Point> bump = {{0, 1}, {0.5, 0.9}, {1, 0}};
  auto b = LowerConvexEnvelope(bump);
  ASSERT_TRUE(b.ok());
  EXPECT_NEAR((*b)(0.5), 0.5, 1e-15);

  std::vector<Point> one = {{0, 1}};
  EXPECT_FALSE(LowerConvexEnvelope(one).ok());
}

TEST(LowerConvexEnvelopeTest, MatchesChordOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i <= 60; ++i) {
      const double x = i / 60.0;
      pts.push_back({x, (1 - x) * (1 - x) + 0.2 * u(rng)});
    }
    auto e = LowerConvexEnvelope(pts);
    ASSERT_TRUE(e.ok());
    // Oracle: the convex minorant at x is the lowest chord between a point
    // left of x and a point right of x.
    for (size_t k = 0; k < pts.size(); ++k) {
      double best = pts[k].y;
      for (size_t i = 0; i <= k; ++i) {
        for (size_t j = k; j < pts.size(); ++j) {
          if (i == j) continue;
          const double w = (pts[k].x - pts[i].x) / (pts[j].x - pts[i].x);
          best = std::min(best, pts[i].y + w * (pts[j].y - pts[i].y));
        }
      }
      EXPECT_NEAR((*e)(pts[k].x), best, 1e-12) << trial << " " << pts[k].x;
    }
  }
}

TEST(DeltaDivergenceTest, BasicProperties) {
  auto g1 = GaussianTradeoff(1.0);
  auto g2 = GaussianTradeoff(0.5);
  ASSERT_TRUE(g1.ok() && g2.ok());
  EXPECT_EQ(DeltaDivergence(*g1, *g1), 0.0);
  EXPECT_NEAR(DeltaDivergence(*g1, *g2), DeltaDivergence(*g2, *g1), 1e-12);
  EXPECT_GT(DeltaDivergence(*g1, *g2), 0.0);
}

TEST(DeltaDivergenceTest, MatchesDeltaGridScan) {
  const TradeoffCurve id = TradeoffCurve::Identity();
  for (double mu : {0.1, 0.3}) {
    auto g = GaussianTradeoff(mu);
    ASSERT_TRUE(g.ok());
    auto feasible = [&](double d) {
      for (double a : id.alpha()) {
        if (a + d > 1.0) break;
        if ((*g)(a + d) - d > id(a) + 1e-12) return false;
        if (id(a + d) - d > (*g)(a) + 1e-12) return false;
      }
      return true;
    };
    double scan = 1.0;
    for (int k = 0; k <= 20000; ++k) {
      if (feasible(k * 1e-5)) {
        scan = k * 1e-5;
        break;
      }
    }
    EXPECT_NEAR(DeltaDivergence(id, *g), scan, 2e-5) << mu;
  }
}

TEST(DeltaDivergenceTest, TriangleInequality) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::uniform_real_distribution<double> uq(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto f1 = GaussianTradeoff(u(rng));
    auto f2 = SubsampledGaussianPlus(uq(rng), u(rng));
    auto f3 = SubsampledGaussianMinus(uq(rng), u(rng));
    ASSERT_TRUE(f1.ok() && f2.ok() && f3.ok());
    EXPECT_LE(DeltaDivergence(*f1, *f3),
              DeltaDivergence(*f1, *f2) + DeltaDivergence(*f2, *f3) +
                  3 * kGridTol);
  }
}

TEST(BlackwellCompareTest, Examples) {
  auto g1 = GaussianTradeoff(1.0);
  auto g2 = GaussianTradeoff(2.0);
  ASSERT_TRUE(g1.ok() && g2.ok());
  auto r = BlackwellCompare(*g1, *g2);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, BlackwellOrder::Kind::kGreaterEq);
  r = BlackwellCompare(*g2, *g1);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, BlackwellOrder::Kind::kLessEq);
  r = BlackwellCompare(*g1, *g1);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, BlackwellOrder::Kind::kEqual);
  EXPECT_STREQ(BlackwellKindName(r->kind), "Equal");
}

TEST(BlackwellCompareTest, GaussiansAreNeverIncomparable) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = GaussianTradeoff(u(rng));
    auto b = GaussianTradeoff(u(rng));
    auto r = BlackwellCompare(*a, *b);
    ASSERT_TRUE(r.ok());
    EXPECT_NE(r->kind, BlackwellOrder::Kind::kIncomparable);
  }
}

TEST(BlackwellCompareTest, CrossingCurvesAreIncomparable) {
  // SG+ with a small rate and large shift against a Gaussian: the former is
  // lower near alpha = 0 and higher in the middle.
  auto a = SubsampledGaussianPlus(0.2, 6.0);
  auto b = GaussianTradeoff(0.6);
  ASSERT_TRUE(a.ok() && b.ok());
  auto r = BlackwellCompare(*a, *b);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, BlackwellOrder::Kind::kIncomparable);
  EXPECT_FALSE(r->crossings.empty());
  for (double x : r->crossings) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(ApproxGdpCheckTest, Examples) {
  auto g = GaussianTradeoff(1.0);
  ASSERT_TRUE(g.ok());
  EXPECT_TRUE(ApproxGdpCheck(*g, 1.0, 0.0));
  EXPECT_FALSE(ApproxGdpCheck(TradeoffCurve::Identity(), 3.0, 0.0));
}

TEST(ApproxGdpCheckTest, ThresholdMatchesDeltaGridScan) {
  auto f = GaussianTradeoff(1.05);
  ASSERT_TRUE(f.ok());
  // Oracle: smallest delta on a 1e-5 grid satisfying both bands pointwise.
  auto holds = [&](double d) {
    for (double a : f->alpha()) {
      const double lo =
          GaussianTradeoffValue(1.0, std::min(1.0, a + d)) - d;
      const double hi =
          GaussianTradeoffValue(1.0, std::max(0.0, a - d)) + d;
      if (lo > (*f)(a) || (*f)(a) > hi) return false;
    }
    return true;
  };
  double scan = -1.0;
  for (int k = 0; k <= 5000; ++k) {
    if (holds(k * 1e-5)) {
      scan = k * 1e-5;
      break;
    }
  }
  ASSERT_GT(scan, 0.0);
  EXPECT_TRUE(ApproxGdpCheck(*f, 1.0, scan));
  EXPECT_TRUE(ApproxGdpCheck(*f, 1.0, scan + 1e-3));
  EXPECT_FALSE(ApproxGdpCheck(*f, 1.0, scan - 2e-5));
}

}  // namespace
}  // namespace fdp
