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

#ifndef FDP_ACCOUNTANT_H_
#define FDP_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/clt.h"
#include "fdp/plrv.h"
#include "fdp/scenario.h"

namespace fdp {

// Privacy budget in fixed point (units of 2^-100). The total is rounded down
// and every deduction up, and a deduction never exceeds what remains, so
// consumed + remaining == total holds exactly.
class BudgetLedger {
 public:
  // Budgets up to 1e6 nats.
  static absl::StatusOr<BudgetLedger> Create(double budget);

  double total() const;
  double remaining() const;
  double consumed() const;

  // Deducts amount (>= 0), inflated by a few ulps to cover evaluation error
  // and rounded up, capped at the remaining budget.
  // Returns the amount actually deducted.
  double Deduct(double amount);

  bool ConservationHolds() const { return consumed_ + remaining_ == total_; }
  bool exhausted() const { return remaining_ == 0; }

  bool operator==(const BudgetLedger& other) const = default;

 private:
  BudgetLedger() = default;

  __int128 total_ = 0;
  __int128 remaining_ = 0;
  __int128 consumed_ = 0;
};

// Independent random streams: Poisson subsampling, output noise and synthetic
// gradients. Each is a std::mt19937_64 seeded with seed_seq{seed, stream}.
class RngStreams {
 public:
  explicit RngStreams(uint64_t seed);

  std::mt19937_64& subsample() { return subsample_; }
  std::mt19937_64& noise() { return noise_; }
  std::mt19937_64& gradients() { return gradients_; }

 private:
  std::mt19937_64 subsample_;
  std::mt19937_64 noise_;
  std::mt19937_64 gradients_;
};

// Per-point gradients for step t (1-based) of a dataset of n points. Norms
// are config.norm * clip (times decay^(t-1) for the decaying source); the
// random-direction source draws a uniform direction per point and step.
std::vector<std::vector<double>> SyntheticGradients(
    const GradientSourceConfig& config, double clip, int t, int n,
    std::mt19937_64& rng);

struct AccountantOptions {
  Regime regime = Regime::kSmallQ;
  double budget = 0.0;
  // Regime 0 admits q in [0, q_bar] with q_bar < 0.2 (q = 0 is a no-op
  // step); regime 1 admits q in [q_bar, 1] with q_bar > 0.8.
  double q_bar = 0.1;
  // Smallest admissible noise multiplier.
  double sigma_bar = 0.1;
  DeductionMode deduction = DeductionMode::kLazy;
  // Regime 1 expects 1 - q_bar <= guard_c / sigma_bar^2; a warning otherwise.
  double guard_c = 1.0;
  uint64_t seed = 0;
};

struct StepRecord {
  int t;
  double q;
  double sigma;
  double clip;
  // C_{B,t}; infinite when q = 0.
  double budget_clip;
  // B_t, the budget available when the step was chosen.
  double remaining_before;
  int sampled;
};

struct StepOutput {
  std::vector<double> noise_free_sum;
  std::vector<double> output;
  bool halted;
};

// Approximate GDP filter for subsampled Gaussian mechanisms.
class GdpAccountant {
 public:
  static absl::StatusOr<GdpAccountant> Create(const AccountantOptions& options);

  // Runs step t = steps() + 1 on the dataset's gradients. Fails after a halt
  // or when (q, sigma, clip) leave the admissible ranges.
  absl::StatusOr<StepOutput> Step(
      double q, double sigma, double clip,
      const std::vector<std::vector<double>>& gradients);

  // Applies the pending lazy deduction of the last step (no-op if none).
  void Finish();

  bool halted() const { return halted_; }
  int steps() const { return static_cast<int>(history_.size()); }
  const BudgetLedger& ledger() const { return ledger_; }
  const std::vector<StepRecord>& history() const { return history_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const AccountantOptions& options() const { return options_; }

  // Deductions requested so far, before capping at the remaining budget.
  double requested() const { return requested_; }

  // On the halting step the full-clip deduction exceeds the cost of the
  // realized clip min(C, C_B): their difference.
  double FinalStepSlack() const;

 private:
  GdpAccountant(const AccountantOptions& options, BudgetLedger ledger)
      : options_(options), ledger_(ledger), rng_(options.seed) {}

  void Deduct(double amount);

  AccountantOptions options_;
  BudgetLedger ledger_;
  RngStreams rng_;
  std::vector<StepRecord> history_;
  std::vector<std::string> warnings_;
  std::optional<double> pending_;
  double requested_ = 0.0;
  bool halted_ = false;
};

struct IndividualStepRecord {
  StepRecord shared;
  // Per point: B_{t,j}, C_{B,t,j} and ||clipped g_{t,j}||.
  std::vector<double> remaining_before;
  std::vector<double> budget_clip;
  std::vector<double> clipped_norm;
};

// Individual accounting: one ledger per data point. A point whose
// budget is exhausted gets a zero clip and drops out; the run itself never
// halts.
class IndividualAccountant {
 public:
  static absl::StatusOr<IndividualAccountant> Create(
      const AccountantOptions& options, const std::vector<double>& budgets);

  absl::StatusOr<StepOutput> Step(
      double q, double sigma, double clip,
      const std::vector<std::vector<double>>& gradients);

  void Finish();

  int steps() const { return static_cast<int>(history_.size()); }
  size_t size() const { return ledgers_.size(); }
  const std::vector<BudgetLedger>& ledgers() const { return ledgers_; }
  const std::vector<IndividualStepRecord>& history() const { return history_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  IndividualAccountant(const AccountantOptions& options,
                       std::vector<BudgetLedger> ledgers)
      : options_(options), ledgers_(std::move(ledgers)), rng_(options.seed) {}

  void ApplyPending();

  AccountantOptions options_;
  std::vector<BudgetLedger> ledgers_;
  RngStreams rng_;
  std::vector<IndividualStepRecord> history_;
  std::vector<std::string> warnings_;
  // Per-point deductions of the last step, in budget units.
  std::vector<double> pending_;
};

struct CltCertificate {
  CltParameters params;
  // False when the CLT preconditions fail ("regime too coarse").
  bool valid = false;
  std::string diagnostic;
  std::optional<CltBandResult> band;
};

// m1 = m2 = accounted, v = 2 accounted; eta1, eta2 and kappa are the gaps
// between the summed exact moments at the realized (q_t, sigma_t) (full clip)
// and m1, m2, v; rho = rho_slack * max_t ThirdMomentBound / VarianceApprox.
absl::StatusOr<CltCertificate> CltCertificateFromSchedule(
    Regime regime, const std::vector<double>& qs,
    const std::vector<double>& sigmas, double accounted, double c = 1.0,
    double rho_slack = 1.1);

absl::StatusOr<CltCertificate> CltCertificateFor(const GdpAccountant& acc,
                                                 double c = 1.0);

struct ComparisonRow {
  double delta;
  double eps_gdp;
  double eps_rdp;
  double rdp_order;
};

struct ComparisonReport {
  double budget;
  // Budget consumed by the GDP filter; mu = sqrt(2 * consumed).
  double consumed;
  double mu;
  int gdp_steps;
  bool gdp_halted;
  int rdp_steps;
  double final_step_slack;
  bool conservation;
  std::vector<double> orders;
  // Renyi budget per order (the schedule's total at that order).
  std::vector<double> rdp_budgets;
  std::vector<ComparisonRow> rows;
  CltCertificate clt;
  std::vector<std::string> warnings;
};

// Runs the approximate GDP filter over the schedule, converts sqrt(2B)-GDP to
// (epsilon, delta), and runs the multi-order RDP filter calibrated to release
// as many steps.
absl::StatusOr<ComparisonReport> RunComparisonScenario(
    const ComparisonConfig& config);

// Sum of full-clip deductions over the schedule.
double ScheduleBudget(const ComparisonConfig& config);

}  // namespace fdp

#endif  // FDP_ACCOUNTANT_H_
