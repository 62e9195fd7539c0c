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

#include "fdp/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fdp/plrv.h"
#include "fdp/scenario.h"
#include "gtest/gtest.h"

namespace fdp {
namespace {

std::vector<std::vector<double>> Saturated(int n, double norm) {
  return std::vector<std::vector<double>>(n, std::vector<double>{norm, 0.0});
}

AccountantOptions SmallQ(double budget) {
  AccountantOptions o;
  o.regime = Regime::kSmallQ;
  o.budget = budget;
  o.q_bar = 0.1;
  o.sigma_bar = 0.1;
  return o;
}

TEST(BudgetLedgerTest, ConservationIsExact) {
  auto l = BudgetLedger::Create(0.05);
  ASSERT_TRUE(l.ok());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1e-3);
  while (!l->exhausted()) {
    const double before = l->remaining();
    const double took = l->Deduct(u(rng));
    ASSERT_TRUE(l->ConservationHolds());
    ASSERT_LE(l->remaining(), before);
    ASSERT_GE(took, 0.0);
  }
  EXPECT_EQ(l->remaining(), 0.0);
  EXPECT_EQ(l->consumed(), l->total());
  EXPECT_EQ(l->Deduct(1.0), 0.0);
  EXPECT_FALSE(BudgetLedger::Create(-1.0).ok());
  EXPECT_FALSE(BudgetLedger::Create(NAN).ok());
}

TEST(BudgetLedgerTest, DeductionsRoundUp) {
  auto l = BudgetLedger::Create(1.0);
  ASSERT_TRUE(l.ok());
  const double took = l->Deduct(0.1);
  EXPECT_GE(took, 0.1);
  EXPECT_LE(took - 0.1, 0.1 * 17 * std::numeric_limits<double>::epsilon() +
                            std::ldexp(1.0, -100));
}

TEST(GdpAccountantTest, ZeroBudgetHaltsAfterOneRelease) {
  auto acc = GdpAccountant::Create(SmallQ(0.0));
  ASSERT_TRUE(acc.ok());
  auto out = acc->Step(0.1, 1.0, 1.0, Saturated(50, 3.0));
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->halted);
  EXPECT_EQ(acc->history()[0].budget_clip, 0.0);
  for (double x : out->noise_free_sum) EXPECT_EQ(x, 0.0);
  EXPECT_FALSE(acc->Step(0.1, 1.0, 1.0, Saturated(50, 3.0)).ok());
  EXPECT_EQ(acc->steps(), 1);
  EXPECT_TRUE(acc->ledger().ConservationHolds());
}

TEST(GdpAccountantTest, FullRateHaltsAfterCeilTwoBSigmaSquaredSteps) {
  for (auto [b, sigma] : {std::pair{2.0, 3.0}, std::pair{2.1, 3.0},
                          std::pair{0.7, 2.5}, std::pair{5.0, 1.0}}) {
    AccountantOptions o;
    o.regime = Regime::kLargeQ;
    o.budget = b;
    o.q_bar = 0.9;
    o.sigma_bar = 0.5;
    auto acc = GdpAccountant::Create(o);
    ASSERT_TRUE(acc.ok());
    // Oracle: running sum of q^2 / (2 sigma^2) until the remaining budget
    // no longer covers one more full-clip step.
    const double cost = 1.0 / (2 * sigma * sigma);
    int oracle = 0;
    double remaining = b;
    while (true) {
      ++oracle;
      if (remaining <= cost * (1 + 1e-12)) break;
      remaining -= cost;
    }
    EXPECT_EQ(oracle, static_cast<int>(std::ceil(2 * b * sigma * sigma - 1e-9)));
    int steps = 0;
    while (!acc->halted()) {
      auto out = acc->Step(1.0, sigma, 1.0, Saturated(10, 2.0));
      ASSERT_TRUE(out.ok());
      ++steps;
      ASSERT_LT(steps, 1000);
    }
    EXPECT_EQ(steps, oracle) << b << " " << sigma;
  }
}

TEST(GdpAccountantTest, LedgerConservedEveryStep) {
  auto acc = GdpAccountant::Create(SmallQ(0.02));
  ASSERT_TRUE(acc.ok());
  double last_remaining = 0.02;
  for (int t = 1; t <= 5000 && !acc->halted(); ++t) {
    const double sigma = 1.0 + 0.5 * std::sin(t / 40.0);
    auto out = acc->Step(0.02, sigma, 1.0, Saturated(20, 1.5));
    ASSERT_TRUE(out.ok());
    ASSERT_TRUE(acc->ledger().ConservationHolds());
    ASSERT_LE(acc->ledger().remaining(), last_remaining);
    last_remaining = acc->ledger().remaining();
    // Realized ratio min(C, C_B) / C never costs more than the deduction.
    const StepRecord& r = acc->history().back();
    const double ratio = std::min(r.clip, r.budget_clip) / r.clip;
    ASSERT_LE(GetApprox(Regime::kSmallQ, r.q, r.sigma, ratio),
              GetApprox(Regime::kSmallQ, r.q, r.sigma, 1.0));
  }
  EXPECT_TRUE(acc->halted());
  EXPECT_GE(acc->FinalStepSlack(), 0.0);
  EXPECT_GE(acc->requested(), acc->ledger().consumed());
}

TEST(GdpAccountantTest, EagerAndLazyAgreeOnTotals) {
  AccountantOptions lazy = SmallQ(0.03);
  AccountantOptions eager = lazy;
  eager.deduction = DeductionMode::kEager;
  auto a = GdpAccountant::Create(lazy);
  auto b = GdpAccountant::Create(eager);
  ASSERT_TRUE(a.ok() && b.ok());
  for (int t = 1; t <= 3000 && !a->halted(); ++t) {
    ASSERT_TRUE(a->Step(0.05, 1.3, 1.0, Saturated(5, 2.0)).ok());
    ASSERT_TRUE(b->Step(0.05, 1.3, 1.0, Saturated(5, 2.0)).ok());
    ASSERT_EQ(a->halted(), b->halted());
  }
  a->Finish();
  b->Finish();
  EXPECT_EQ(a->steps(), b->steps());
  EXPECT_EQ(a->ledger(), b->ledger());
}

TEST(GdpAccountantTest, DeterministicGivenSeed) {
  AccountantOptions o = SmallQ(0.01);
  o.seed = 42;
  auto a = GdpAccountant::Create(o);
  auto b = GdpAccountant::Create(o);
  ASSERT_TRUE(a.ok() && b.ok());
  GradientSourceConfig g;
  g.kind = GradientKind::kRandomDirection;
  RngStreams ra(42), rb(42);
  while (!a->halted()) {
    auto oa = a->Step(0.05, 1.0, 1.0, SyntheticGradients(g, 1.0, a->steps() + 1, 30, ra.gradients()));
    auto ob = b->Step(0.05, 1.0, 1.0, SyntheticGradients(g, 1.0, b->steps() + 1, 30, rb.gradients()));
    ASSERT_TRUE(oa.ok() && ob.ok());
    ASSERT_EQ(oa->output, ob->output);
  }
  EXPECT_EQ(a->steps(), b->steps());
}

TEST(GdpAccountantTest, RejectsInadmissibleParameters) {
  auto acc = GdpAccountant::Create(SmallQ(1.0));
  ASSERT_TRUE(acc.ok());
  EXPECT_FALSE(acc->Step(0.15, 1.0, 1.0, Saturated(2, 1.0)).ok());
  EXPECT_FALSE(acc->Step(0.05, 0.01, 1.0, Saturated(2, 1.0)).ok());
  EXPECT_FALSE(acc->Step(0.05, 1.0, 0.0, Saturated(2, 1.0)).ok());
  // q = 0 is a no-op step.
  auto out = acc->Step(0.0, 1.0, 1.0, Saturated(2, 1.0));
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->halted);
  acc->Finish();
  EXPECT_EQ(acc->ledger().consumed(), 0.0);

  AccountantOptions bad = SmallQ(1.0);
  bad.q_bar = 0.5;
  EXPECT_FALSE(GdpAccountant::Create(bad).ok());
  AccountantOptions large;
  large.regime = Regime::kLargeQ;
  large.q_bar = 0.85;
  large.sigma_bar = 4.0;
  large.budget = 1.0;
  auto warned = GdpAccountant::Create(large);
  ASSERT_TRUE(warned.ok());
  EXPECT_EQ(warned->warnings().size(), 1u);
  large.sigma_bar = 2.0;
  warned = GdpAccountant::Create(large);
  ASSERT_TRUE(warned.ok());
  EXPECT_TRUE(warned->warnings().empty());
  EXPECT_FALSE(warned->Step(0.5, 2.0, 1.0, Saturated(2, 1.0)).ok());
}

TEST(IndividualAccountantTest, MatchesGdpFilterUnderHomogeneousBudgets) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> uq(0.005, 0.1);
  std::uniform_real_distribution<double> us(0.5, 3.0);
  std::uniform_real_distribution<double> ub(0.001, 0.05);
  for (int trial = 0; trial < 100; ++trial) {
    AccountantOptions o = SmallQ(ub(rng));
    o.seed = trial;
    const int n = 6;
    auto filter = GdpAccountant::Create(o);
    auto individual = IndividualAccountant::Create(o, std::vector<double>(n, o.budget));
    ASSERT_TRUE(filter.ok() && individual.ok());
    for (int t = 1; t <= 400 && !filter->halted(); ++t) {
      const double q = uq(rng);
      const double sigma = us(rng);
      const double clip = 0.5 + t % 3;
      const auto grads = Saturated(n, 4.0 * clip);
      auto out_f = filter->Step(q, sigma, clip, grads);
      auto out_i = individual->Step(q, sigma, clip, grads);
      ASSERT_TRUE(out_f.ok() && out_i.ok());
      const StepRecord& rf = filter->history().back();
      const IndividualStepRecord& ri = individual->history().back();
      ASSERT_EQ(rf.sampled, ri.shared.sampled);
      for (int j = 0; j < n; ++j) {
        ASSERT_EQ(ri.remaining_before[j], rf.remaining_before) << trial;
        ASSERT_EQ(ri.budget_clip[j], rf.budget_clip) << trial;
      }
      ASSERT_EQ(out_f->output, out_i->output) << trial;
      if (!filter->halted()) {
        // Both ledgers carry the same pending deduction.
        BudgetLedger l2 = filter->ledger();
        l2.Deduct(GetApprox(o.regime, q, sigma, 1.0));
        BudgetLedger l3 = individual->ledgers()[0];
        l3.Deduct(GetApprox(o.regime, q, sigma,
                            ri.clipped_norm[0] / clip));
        ASSERT_EQ(l2, l3) << trial << " " << t;
      }
    }
  }
}

TEST(IndividualAccountantTest, ZeroGradientPointKeepsBudget) {
  auto acc = IndividualAccountant::Create(SmallQ(0.01), {0.01, 0.01});
  ASSERT_TRUE(acc.ok());
  for (int t = 0; t < 500; ++t) {
    std::vector<std::vector<double>> g = {{2.0}, {0.0}};
    ASSERT_TRUE(acc->Step(0.05, 1.0, 1.0, g).ok());
  }
  acc->Finish();
  EXPECT_TRUE(acc->ledgers()[0].exhausted());
  EXPECT_EQ(acc->ledgers()[1].remaining(), acc->ledgers()[1].total());
  EXPECT_EQ(acc->steps(), 500);
}

TEST(IndividualAccountantTest, ToyRunMatchesManualRecomputation) {
  // n = 3, five steps, norms fixed per point; recompute B_{t,j} by hand:
  // C_B = C sigma sqrt(ln(1 + 2 B / q^2)), clipped = min(norm, C, C_B),
  // cost = q^2 (exp(clipped^2 / (sigma C)^2) - 1) / 2, capped at B.
  const std::vector<double> norms = {2.0, 0.5, 0.0};
  const std::vector<double> qs = {0.1, 0.05, 0.1, 0.08, 0.1};
  const std::vector<double> sigmas = {1.0, 2.0, 1.5, 1.0, 0.8};
  const double clip = 1.0;
  std::vector<double> budgets = {0.004, 0.01, 0.002};
  auto acc = IndividualAccountant::Create(SmallQ(0.0), budgets);
  ASSERT_TRUE(acc.ok());
  for (size_t t = 0; t < qs.size(); ++t) {
    std::vector<std::vector<double>> g;
    for (double n : norms) g.push_back({n});
    ASSERT_TRUE(acc->Step(qs[t], sigmas[t], clip, g).ok());
    for (size_t j = 0; j < norms.size(); ++j) {
      const double s = sigmas[t];
      const double cb = clip * s * std::sqrt(std::log(1 + 2 * budgets[j] / (qs[t] * qs[t])));
      const double clipped = std::min({norms[j], clip, cb});
      ASSERT_NEAR(acc->history().back().clipped_norm[j], clipped, 1e-15);
      const double cost = 0.5 * qs[t] * qs[t] *
                          std::expm1(clipped * clipped / (s * clip * s * clip));
      budgets[j] = std::max(0.0, budgets[j] - cost);
    }
  }
  acc->Finish();
  for (size_t j = 0; j < norms.size(); ++j) {
    EXPECT_NEAR(acc->ledgers()[j].remaining(), budgets[j], 1e-15) << j;
    EXPECT_TRUE(acc->ledgers()[j].ConservationHolds());
  }
  EXPECT_LT(budgets[0], 0.004);
  EXPECT_EQ(budgets[2], 0.002);
}

TEST(ComparisonScenarioTest, DefaultScheduleBudget) {
  ComparisonConfig c;
  c.delta_grid = {1e-7, 1e-5, 1e-3};
  c.dataset_size = 50;
  auto r = RunComparisonScenario(c);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_GE(r->consumed, 0.045);
  EXPECT_LE(r->consumed, 0.055);
  EXPECT_GE(r->mu, 0.30);
  EXPECT_LE(r->mu, 0.33);
  EXPECT_EQ(r->mu, std::sqrt(2 * r->consumed));
  EXPECT_EQ(r->gdp_steps, 3650);
  EXPECT_EQ(r->rdp_steps, 3650);
  EXPECT_TRUE(r->conservation);
  for (const ComparisonRow& row : r->rows) {
    EXPECT_LT(row.eps_gdp, row.eps_rdp) << row.delta;
  }
}

TEST(ComparisonScenarioTest, ZeroRateConsumesNothing) {
  ComparisonConfig c;
  c.q = 0.0;
  c.horizon = 100;
  c.delta_grid = {1e-5};
  c.dataset_size = 10;
  auto r = RunComparisonScenario(c);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->consumed, 0.0);
  EXPECT_EQ(r->mu, 0.0);
  EXPECT_EQ(r->rows[0].eps_gdp, 0.0);
}

TEST(CltCertificateTest, BudgetParameters) {
  std::vector<double> qs(2000, 0.05);
  std::vector<double> sigmas(2000, 1.5);
  auto cert = CltCertificateFromSchedule(Regime::kSmallQ, qs, sigmas, 0.05);
  ASSERT_TRUE(cert.ok());
  EXPECT_EQ(cert->params.m1, 0.05);
  EXPECT_EQ(cert->params.v, 0.1);
  CltParameters p = cert->params;
  p.eta1 = p.eta2 = p.kappa = p.rho = 0.0;
  auto band = CltBand(p);
  ASSERT_TRUE(band.ok());
  EXPECT_DOUBLE_EQ(band->mu, std::sqrt(0.1));
  EXPECT_EQ(band->phi, 0.0);
  if (!cert->valid) {
    EXPECT_NE(cert->diagnostic.find("regime too coarse"), std::string::npos);
  }
}

double CertificateDelta(double q, double sigma, double budget) {
  const double cost = GetApprox(Regime::kSmallQ, q, sigma, 1.0);
  const int steps = static_cast<int>(std::ceil(budget / cost));
  std::vector<double> qs(steps, q);
  std::vector<double> sigmas(steps, sigma);
  auto cert =
      CltCertificateFromSchedule(Regime::kSmallQ, qs, sigmas, steps * cost);
  EXPECT_TRUE(cert.ok());
  EXPECT_TRUE(cert->valid) << cert->diagnostic;
  return cert->valid ? cert->band->delta : INFINITY;
}

TEST(CltCertificateTest, DeltaShrinksWithSamplingRate) {
  const double coarse = CertificateDelta(0.1, 1.2, 10.0);
  const double fine = CertificateDelta(0.01, 1.2, 10.0);
  EXPECT_LT(fine, coarse);
}

TEST(SyntheticGradientsTest, Sources) {
  std::mt19937_64 rng(1);
  GradientSourceConfig g;
  g.kind = GradientKind::kDecayingNorm;
  g.norm = 2.0;
  g.decay = 0.5;
  auto grads = SyntheticGradients(g, 3.0, 3, 4, rng);
  ASSERT_EQ(grads.size(), 4u);
  EXPECT_NEAR(grads[0][0], 1.5, 1e-15);
  g.kind = GradientKind::kRandomDirection;
  g.dimension = 5;
  grads = SyntheticGradients(g, 1.0, 1, 3, rng);
  for (const auto& v : grads) {
    double s = 0.0;
    for (double x : v) s += x * x;
    EXPECT_NEAR(std::sqrt(s), 2.0, 1e-12);
  }
}

}  // namespace
}  // namespace fdp
