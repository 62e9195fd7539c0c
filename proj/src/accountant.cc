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
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "fdp/density_pair.h"
#include "fdp/filters.h"
#include "fdp/profiles.h"

namespace fdp {
namespace {

constexpr int kUnitExponent = 100;
constexpr double kMaxBudget = 1e6;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative allowance for the floating-point error in an evaluated cost, so a
// cost that rounded low is still charged at least its exact value.
constexpr double kCostSlack = 16 * std::numeric_limits<double>::epsilon();

__int128 UnitsFloor(double x) {
  return static_cast<__int128>(std::floor(std::ldexp(x, kUnitExponent)));
}

__int128 UnitsCeil(double x) {
  return static_cast<__int128>(std::ceil(std::ldexp(x, kUnitExponent)));
}

double FromUnits(__int128 u) {
  return std::ldexp(static_cast<double>(u), -kUnitExponent);
}

absl::Status ValidateOptions(const AccountantOptions& o) {
  if (o.regime == Regime::kSmallQ && !(o.q_bar > 0.0 && o.q_bar < 0.2)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "regime 0 needs 0 < q_bar < 0.2, got q_bar = %g", o.q_bar));
  }
  if (o.regime == Regime::kLargeQ && !(o.q_bar > 0.8 && o.q_bar <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "regime 1 needs 0.8 < q_bar <= 1, got q_bar = %g", o.q_bar));
  }
  if (!(o.sigma_bar > 0.0 && std::isfinite(o.sigma_bar))) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma_bar must be positive, got %g", o.sigma_bar));
  }
  return absl::OkStatus();
}

std::vector<std::string> GuardWarnings(const AccountantOptions& o) {
  std::vector<std::string> w;
  if (o.regime == Regime::kLargeQ &&
      1.0 - o.q_bar > o.guard_c / (o.sigma_bar * o.sigma_bar)) {
    w.push_back(absl::StrFormat(
        "regime 1 expects 1 - q_bar <= %g / sigma_bar^2; got 1 - q_bar = %g "
        "with sigma_bar = %g",
        o.guard_c, 1.0 - o.q_bar, o.sigma_bar));
  }
  return w;
}

absl::Status ValidateStep(const AccountantOptions& o, double q, double sigma,
                          double clip,
                          const std::vector<std::vector<double>>& gradients) {
  if (o.regime == Regime::kSmallQ && !(q >= 0.0 && q <= o.q_bar)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "regime 0 admits q_t in [0, %g], got %g", o.q_bar, q));
  }
  if (o.regime == Regime::kLargeQ && !(q >= o.q_bar && q <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "regime 1 admits q_t in [%g, 1], got %g", o.q_bar, q));
  }
  if (!(sigma >= o.sigma_bar && std::isfinite(sigma))) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sigma_t must be finite and at least sigma_bar = %g, got %g",
        o.sigma_bar, sigma));
  }
  if (!(clip > 0.0 && std::isfinite(clip))) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clip bound must be positive, got %g", clip));
  }
  for (const std::vector<double>& g : gradients) {
    if (g.size() != gradients.front().size()) {
      return absl::InvalidArgumentError("gradients must share one dimension");
    }
  }
  return absl::OkStatus();
}

double Norm(const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += x * x;
  return std::sqrt(s);
}

// g * min(1, c / ||g||).
double ClipScale(double norm, double c) {
  if (norm == 0.0) return 0.0;
  return std::min(1.0, c / norm);
}

// C_{B,t} = C_t * invBudg(q_t, sigma_t, B_t); no constraint when q_t = 0.
double BudgetClip(Regime regime, double q, double sigma, double clip,
                  double remaining) {
  if (q == 0.0) return kInf;
  return clip * *InvBudg(regime, q, sigma, remaining);
}

std::vector<double> AddNoise(const std::vector<double>& sum, double scale,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, scale);
  std::vector<double> out(sum);
  for (double& x : out) x += noise(rng);
  return out;
}

}  // namespace

absl::StatusOr<BudgetLedger> BudgetLedger::Create(double budget) {
  if (!(budget >= 0.0 && budget <= kMaxBudget)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "budget must lie in [0, %g], got %g", kMaxBudget, budget));
  }
  BudgetLedger l;
  l.total_ = UnitsFloor(budget);
  l.remaining_ = l.total_;
  return l;
}

double BudgetLedger::total() const { return FromUnits(total_); }
double BudgetLedger::remaining() const { return FromUnits(remaining_); }
double BudgetLedger::consumed() const { return FromUnits(consumed_); }

double BudgetLedger::Deduct(double amount) {
  if (!(amount > 0.0)) return 0.0;
  const __int128 want =
      amount >= kMaxBudget ? remaining_ : std::min(UnitsCeil(amount * (1 + kCostSlack)), remaining_);
  remaining_ -= want;
  consumed_ += want;
  return FromUnits(want);
}

RngStreams::RngStreams(uint64_t seed) {
  const auto lo = static_cast<uint32_t>(seed);
  const auto hi = static_cast<uint32_t>(seed >> 32);
  std::seed_seq s0{lo, hi, 0u};
  std::seed_seq s1{lo, hi, 1u};
  std::seed_seq s2{lo, hi, 2u};
  subsample_.seed(s0);
  noise_.seed(s1);
  gradients_.seed(s2);
}

std::vector<std::vector<double>> SyntheticGradients(
    const GradientSourceConfig& config, double clip, int t, int n,
    std::mt19937_64& rng) {
  const int d = std::max(1, config.dimension);
  std::vector<std::vector<double>> out(n, std::vector<double>(d, 0.0));
  double norm = config.norm * clip;
  if (config.kind == GradientKind::kDecayingNorm) {
    norm *= std::pow(config.decay, t - 1);
  }
  if (config.kind != GradientKind::kRandomDirection) {
    for (std::vector<double>& g : out) g[0] = norm;
    return out;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::vector<double>& g : out) {
    double len = 0.0;
    while (len == 0.0) {
      for (double& x : g) x = normal(rng);
      len = Norm(g);
    }
    for (double& x : g) x *= norm / len;
  }
  return out;
}

absl::StatusOr<GdpAccountant> GdpAccountant::Create(
    const AccountantOptions& options) {
  if (absl::Status s = ValidateOptions(options); !s.ok()) return s;
  absl::StatusOr<BudgetLedger> ledger = BudgetLedger::Create(options.budget);
  if (!ledger.ok()) return ledger.status();
  GdpAccountant acc(options, *ledger);
  acc.warnings_ = GuardWarnings(options);
  return acc;
}

void GdpAccountant::Deduct(double amount) {
  requested_ += amount;
  ledger_.Deduct(amount);
}

absl::StatusOr<StepOutput> GdpAccountant::Step(
    double q, double sigma, double clip,
    const std::vector<std::vector<double>>& gradients) {
  if (halted_) {
    return absl::FailedPreconditionError(
        absl::StrFormat("the filter halted at step %d", steps()));
  }
  if (absl::Status s = ValidateStep(options_, q, sigma, clip, gradients);
      !s.ok()) {
    return s;
  }
  if (pending_.has_value()) {
    Deduct(*pending_);
    pending_.reset();
  }
  const double remaining = ledger_.remaining();
  const double budget_clip =
      BudgetClip(options_.regime, q, sigma, clip, remaining);
  const double c = std::min(clip, budget_clip);
  const size_t dim = gradients.empty() ? 0 : gradients.front().size();
  std::vector<double> sum(dim, 0.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int sampled = 0;
  for (const std::vector<double>& g : gradients) {
    if (!(uniform(rng_.subsample()) < q)) continue;
    ++sampled;
    const double scale = ClipScale(Norm(g), c);
    for (size_t k = 0; k < dim; ++k) sum[k] += g[k] * scale;
  }
  StepOutput out{sum, AddNoise(sum, sigma * clip, rng_.noise()), false};
  history_.push_back(
      StepRecord{steps() + 1, q, sigma, clip, budget_clip, remaining, sampled});
  const double cost = GetApprox(options_.regime, q, sigma, 1.0);
  if (options_.deduction == DeductionMode::kEager) {
    Deduct(cost);
  } else {
    pending_ = cost;
  }
  if (budget_clip <= clip) {
    halted_ = true;
    Finish();
  }
  out.halted = halted_;
  return out;
}

void GdpAccountant::Finish() {
  if (pending_.has_value()) {
    Deduct(*pending_);
    pending_.reset();
  }
}

double GdpAccountant::FinalStepSlack() const {
  if (!halted_ || history_.empty()) return 0.0;
  const StepRecord& r = history_.back();
  const double ratio = std::min(r.clip, r.budget_clip) / r.clip;
  return GetApprox(options_.regime, r.q, r.sigma, 1.0) -
         GetApprox(options_.regime, r.q, r.sigma, ratio);
}

absl::StatusOr<IndividualAccountant> IndividualAccountant::Create(
    const AccountantOptions& options, const std::vector<double>& budgets) {
  if (absl::Status s = ValidateOptions(options); !s.ok()) return s;
  std::vector<BudgetLedger> ledgers;
  for (double b : budgets) {
    absl::StatusOr<BudgetLedger> l = BudgetLedger::Create(b);
    if (!l.ok()) return l.status();
    ledgers.push_back(*l);
  }
  IndividualAccountant acc(options, std::move(ledgers));
  acc.warnings_ = GuardWarnings(options);
  return acc;
}

void IndividualAccountant::ApplyPending() {
  for (size_t j = 0; j < pending_.size(); ++j) ledgers_[j].Deduct(pending_[j]);
  pending_.clear();
}

void IndividualAccountant::Finish() { ApplyPending(); }

absl::StatusOr<StepOutput> IndividualAccountant::Step(
    double q, double sigma, double clip,
    const std::vector<std::vector<double>>& gradients) {
  if (gradients.size() != ledgers_.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "expected %d gradients, got %d", ledgers_.size(), gradients.size()));
  }
  if (absl::Status s = ValidateStep(options_, q, sigma, clip, gradients);
      !s.ok()) {
    return s;
  }
  ApplyPending();
  const size_t n = ledgers_.size();
  IndividualStepRecord rec;
  rec.shared = StepRecord{steps() + 1, q, sigma, clip, kInf, kInf, 0};
  rec.remaining_before.resize(n);
  rec.budget_clip.resize(n);
  rec.clipped_norm.resize(n);
  std::vector<double> scale(n);
  std::vector<double> cost(n);
  // Clipped gradients of every point, before subsampling. The cost uses
  // ||clipped g|| / C_t with sigma_t, the same ratio as the (sigma_t C_t,
  // ||clipped g||) form.
  for (size_t j = 0; j < n; ++j) {
    const double remaining = ledgers_[j].remaining();
    const double budget_clip =
        BudgetClip(options_.regime, q, sigma, clip, remaining);
    const double c = std::min(clip, budget_clip);
    const double norm = Norm(gradients[j]);
    scale[j] = ClipScale(norm, c);
    const double clipped = std::min(norm, c);
    rec.remaining_before[j] = remaining;
    rec.budget_clip[j] = budget_clip;
    rec.clipped_norm[j] = clipped;
    cost[j] = GetApprox(options_.regime, q, sigma, clipped / clip);
  }
  const size_t dim = gradients.empty() ? 0 : gradients.front().size();
  std::vector<double> sum(dim, 0.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (size_t j = 0; j < n; ++j) {
    if (!(uniform(rng_.subsample()) < q)) continue;
    ++rec.shared.sampled;
    for (size_t k = 0; k < dim; ++k) sum[k] += gradients[j][k] * scale[j];
  }
  StepOutput out{sum, AddNoise(sum, sigma * clip, rng_.noise()), false};
  history_.push_back(std::move(rec));
  pending_ = std::move(cost);
  if (options_.deduction == DeductionMode::kEager) ApplyPending();
  return out;
}

absl::StatusOr<CltCertificate> CltCertificateFromSchedule(
    Regime regime, const std::vector<double>& qs,
    const std::vector<double>& sigmas, double accounted, double c,
    double rho_slack) {
  if (qs.size() != sigmas.size()) {
    return absl::InvalidArgumentError("need one sigma per sampling rate");
  }
  std::map<std::pair<double, double>, MomentSummary> cache;
  double mean_p = 0.0;
  double neg_mean_q = 0.0;
  double var_p = 0.0;
  double var_q = 0.0;
  double rho = 0.0;
  for (size_t t = 0; t < qs.size(); ++t) {
    const double q = qs[t];
    const double sigma = sigmas[t];
    if (q == 0.0) continue;
    auto it = cache.find({q, sigma});
    if (it == cache.end()) {
      absl::StatusOr<MomentSummary> m = ExactMoments(q, 1.0, sigma);
      if (!m.ok()) return m.status();
      it = cache.emplace(std::make_pair(q, sigma), *m).first;
    }
    mean_p += it->second.mean_p;
    neg_mean_q -= it->second.mean_q;
    var_p += it->second.var_p;
    var_q += it->second.var_q;
    rho = std::max(rho, rho_slack * ThirdMomentBound(regime, q, sigma, 1.0) /
                            VarianceApprox(regime, q, sigma, 1.0));
  }
  CltCertificate cert;
  CltParameters& p = cert.params;
  p.m1 = accounted;
  p.m2 = accounted;
  p.v = 2.0 * accounted;
  p.eta1 = std::abs(mean_p - p.m1);
  p.eta2 = std::abs(neg_mean_q - p.m2);
  p.kappa = std::max(std::abs(var_p - p.v), std::abs(var_q - p.v));
  p.rho = rho;
  p.c = c;
  absl::StatusOr<CltBandResult> band = CltBand(p);
  if (!band.ok()) {
    cert.valid = false;
    cert.diagnostic =
        absl::StrFormat("regime too coarse: %s", band.status().message());
    return cert;
  }
  cert.valid = true;
  cert.band = *std::move(band);
  return cert;
}

absl::StatusOr<CltCertificate> CltCertificateFor(const GdpAccountant& acc,
                                                 double c) {
  std::vector<double> qs;
  std::vector<double> sigmas;
  for (const StepRecord& r : acc.history()) {
    qs.push_back(r.q);
    sigmas.push_back(r.sigma);
  }
  return CltCertificateFromSchedule(acc.options().regime, qs, sigmas,
                                    acc.ledger().consumed(), c);
}

double ScheduleBudget(const ComparisonConfig& config) {
  double total = 0.0;
  for (int t = 1; t <= config.horizon; ++t) {
    total += GetApprox(config.regime, config.q,
                       config.sigma.At(t, config.horizon), 1.0);
  }
  return total;
}

absl::StatusOr<ComparisonReport> RunComparisonScenario(
    const ComparisonConfig& config) {
  AccountantOptions options;
  options.regime = config.regime;
  options.budget = config.budget < 0.0 ? ScheduleBudget(config) : config.budget;
  options.q_bar = config.q_bar;
  options.sigma_bar = config.sigma_bar;
  options.deduction = config.deduction;
  options.seed = config.seed;
  absl::StatusOr<GdpAccountant> acc = GdpAccountant::Create(options);
  if (!acc.ok()) return acc.status();
  const int horizon = config.horizon;
  const std::vector<double> sigmas = config.sigma.Values(horizon);
  RngStreams rng(config.seed);
  for (int t = 1; t <= horizon && !acc->halted(); ++t) {
    const std::vector<std::vector<double>> grads =
        SyntheticGradients(config.gradients, config.clip, t,
                           config.dataset_size, rng.gradients());
    absl::StatusOr<StepOutput> out =
        acc->Step(config.q, sigmas[t - 1], config.clip, grads);
    if (!out.ok()) return out.status();
  }
  acc->Finish();

  ComparisonReport report;
  report.budget = acc->ledger().total();
  report.consumed = acc->ledger().consumed();
  report.mu = std::sqrt(2.0 * report.consumed);
  report.gdp_steps = acc->steps();
  report.gdp_halted = acc->halted();
  report.final_step_slack = acc->FinalStepSlack();
  report.conservation = acc->ledger().ConservationHolds();
  report.warnings = acc->warnings();

  // Renyi epsilons per distinct sigma, at every order.
  const std::vector<double>& orders = DefaultRdpOrders();
  report.orders = orders;
  std::map<double, std::vector<double>> rdp_cache;
  auto rdp_at = [&](double sigma) -> absl::StatusOr<const std::vector<double>*> {
    auto it = rdp_cache.find(sigma);
    if (it != rdp_cache.end()) return &it->second;
    std::vector<double> row(orders.size());
    for (size_t k = 0; k < orders.size(); ++k) {
      absl::StatusOr<double> r = RenyiDivergence(config.q, sigma, orders[k]);
      if (!r.ok()) return r.status();
      row[k] = *r;
    }
    return &rdp_cache.emplace(sigma, std::move(row)).first->second;
  };
  // The RDP budget at each order is the total of the steps the GDP filter
  // released.
  report.rdp_budgets.assign(orders.size(), 0.0);
  for (int t = 1; t <= report.gdp_steps; ++t) {
    absl::StatusOr<const std::vector<double>*> row = rdp_at(sigmas[t - 1]);
    if (!row.ok()) return row.status();
    for (size_t k = 0; k < orders.size(); ++k) {
      report.rdp_budgets[k] += (**row)[k];
    }
  }
  std::vector<double> totals(orders.size(), 0.0);
  report.rdp_steps = 0;
  for (int t = 1; t <= horizon; ++t) {
    absl::StatusOr<const std::vector<double>*> row = rdp_at(sigmas[t - 1]);
    if (!row.ok()) return row.status();
    std::vector<double> next = totals;
    for (size_t k = 0; k < orders.size(); ++k) next[k] += (**row)[k];
    absl::StatusOr<FilterDecision> d =
        RdpFilterMultiOrder(orders, report.rdp_budgets, {next});
    if (!d.ok()) return d.status();
    if (!d->proceed()) break;
    totals = std::move(next);
    ++report.rdp_steps;
  }

  absl::StatusOr<DensityPair> gauss = DensityPair::Gaussian(report.mu);
  if (!gauss.ok()) return gauss.status();
  for (double delta : config.delta_grid) {
    ComparisonRow row{delta, 0.0, 0.0, 0.0};
    absl::StatusOr<double> eg = EpsilonForDelta(*gauss, delta);
    if (!eg.ok()) return eg.status();
    row.eps_gdp = *eg;
    absl::StatusOr<RdpEpsilon> er =
        BestRdpToDp(orders, totals, delta, config.rdp_conversion);
    if (!er.ok()) return er.status();
    row.eps_rdp = er->epsilon;
    row.rdp_order = er->order;
    report.rows.push_back(row);
  }
  absl::StatusOr<CltCertificate> clt =
      CltCertificateFor(*acc, config.clt_constant);
  if (!clt.ok()) return clt.status();
  report.clt = *std::move(clt);
  return report;
}

}  // namespace fdp
