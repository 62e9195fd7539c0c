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

// Command-line frontend: counterexample, moments, compare-filters, compose
// and accountant-run. Every command writes its results under --out and exits
// non-zero when a computation fails or an internal check does not hold.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "fdp/accountant.h"
#include "fdp/compose.h"
#include "fdp/config.h"
#include "fdp/counterexample.h"
#include "fdp/filters.h"
#include "fdp/io.h"
#include "fdp/plrv.h"
#include "fdp/profiles.h"
#include "fdp/scenario.h"
#include "json.hpp"

namespace fdp {
namespace {

using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string out;
  std::string config;
  std::optional<uint64_t> seed;
};

std::string Num(double x) { return FormatNumber(x, kCliPrecision); }

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return absl::IsInvalidArgument(status) ? kExitUsage : kExitError;
}

absl::Status PrepareOut(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot create '%s': %s", dir, ec.message()));
  }
  return absl::OkStatus();
}

std::string OutPath(const CommonFlags& f, const std::string& name) {
  return (std::filesystem::path(f.out) / name).string();
}

absl::StatusOr<Config> LoadConfig(const std::string& path,
                                  const std::set<std::string>& keys) {
  if (path.empty()) return Config::Parse("", keys);
  return Config::ParseFile(path, keys);
}

absl::StatusOr<double> GetDoubleOr(const Config& c, const std::string& key,
                                   double fallback) {
  if (!c.Has(key)) return fallback;
  return c.GetDouble(key);
}

// counterexample ------------------------------------------------------------

absl::StatusOr<CounterexampleParams> CounterexampleParamsFrom(const Config& c) {
  CounterexampleParams p;
  struct Field {
    const char* key;
    double* target;
  };
  for (const Field& f : {Field{"q", &p.q}, Field{"sigma", &p.sigma},
                         Field{"mu1", &p.mu1},
                         Field{"branch1_mu2", &p.branch1_mu2},
                         Field{"branch1_mu3", &p.branch1_mu3},
                         Field{"branch2_mu2", &p.branch2_mu2},
                         Field{"branch2_mu3", &p.branch2_mu3},
                         Field{"threshold_y", &p.threshold_y}}) {
    absl::StatusOr<double> v = GetDoubleOr(c, f.key, *f.target);
    if (!v.ok()) return v.status();
    *f.target = *v;
  }
  if (c.Has("split")) {
    const std::string s = *c.GetString("split");
    if (s == "likelihood_ratio") {
      p.split = SplitRule::kLikelihoodRatio;
    } else if (s == "threshold") {
      p.split = SplitRule::kLiteralThreshold;
    } else {
      return absl::InvalidArgumentError(absl::StrFormat(
          "split must be likelihood_ratio or threshold, got '%s'", s));
    }
  }
  return p;
}

int RunCounterexample(const CommonFlags& flags) {
  absl::StatusOr<Config> cfg = LoadConfig(
      flags.config, {"q", "sigma", "mu1", "branch1_mu2", "branch1_mu3",
                     "branch2_mu2", "branch2_mu3", "split", "threshold_y"});
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<CounterexampleParams> params = CounterexampleParamsFrom(*cfg);
  if (!params.ok()) return Fail(params.status());
  if (absl::Status s = PrepareOut(flags.out); !s.ok()) return Fail(s);

  absl::StatusOr<Counterexample> ce = Counterexample::Build(*params);
  if (!ce.ok()) return Fail(ce.status());
  absl::StatusOr<std::vector<double>> crossings = ce->Crossings();
  if (!crossings.ok()) return Fail(crossings.status());
  absl::StatusOr<double> gamma0 = ce->Gamma0();
  if (!gamma0.ok()) return Fail(gamma0.status());
  absl::StatusOr<PrivacyProfile> tight = ce->BudgetTightProfile();
  if (!tight.ok()) return Fail(tight.status());
  absl::StatusOr<PrivacyProfile> adapt = ce->AdaptiveProfile();
  if (!adapt.ok()) return Fail(adapt.status());
  const PrivacyProfile sym_tight = SymmetrizeProfile(*tight);
  const PrivacyProfile sym_adapt = SymmetrizeProfile(*adapt);

  const PrivacyProfile& h1 = ce->BranchTail(1);
  const PrivacyProfile& h2 = ce->BranchTail(2);
  Table fig3{{"gamma", "H_2x3_1", "H_2x3_2"}, {}};
  Table fig4{{"gamma", "H_B_tight", "H_adapt", "sym_H_B_tight", "sym_H_adapt"},
             {}};
  for (size_t i = 0; i < h1.size(); ++i) {
    fig3.rows.push_back({h1.gamma(i), h1.value(i), h2.value(i)});
    fig4.rows.push_back({h1.gamma(i), tight->value(i), adapt->value(i),
                         sym_tight.value(i), sym_adapt.value(i)});
  }

  // Grid-free values at the calibration point.
  auto tight_at = [&](double g) { return ce->BudgetTightAt(g); };
  auto adapt_at = [&](double g) { return ce->AdaptiveAt(g); };
  absl::StatusOr<double> hb = tight_at(*gamma0);
  absl::StatusOr<double> ha = adapt_at(*gamma0);
  absl::StatusOr<double> shb = SymmetrizedAt(tight_at, *gamma0);
  absl::StatusOr<double> sha = SymmetrizedAt(adapt_at, *gamma0);
  for (const auto* v : {&hb, &ha, &shb, &sha}) {
    if (!v->ok()) return Fail(v->status());
  }
  const double gap = *ha - *hb;
  const double sym_gap = *sha - *shb;

  json summary;
  summary["gamma0"] = *gamma0;
  summary["crossings"] = *crossings;
  summary["H_B_tight_at_gamma0"] = *hb;
  summary["H_adapt_at_gamma0"] = *ha;
  summary["gap"] = gap;
  summary["sym_H_B_tight_at_gamma0"] = *shb;
  summary["sym_H_adapt_at_gamma0"] = *sha;
  summary["sym_gap"] = sym_gap;
  summary["split"] = params->split == SplitRule::kLikelihoodRatio
                         ? "likelihood_ratio"
                         : "threshold";
  for (const auto& [name, content] :
       std::vector<std::pair<std::string, std::string>>{
           {"fig3.csv", WriteCsv(fig3, kCliPrecision)},
           {"fig4.csv", WriteCsv(fig4, kCliPrecision)},
           {"gamma0.txt", Num(*gamma0) + "\n"},
           {"summary.json", summary.dump(2) + "\n"}}) {
    if (absl::Status s = WriteFile(OutPath(flags, name), content); !s.ok()) {
      return Fail(s);
    }
  }
  const bool pass = gap > 0.0;
  std::cout << "gamma0 = " << Num(*gamma0) << "\n"
            << "H_B_tight(gamma0) = " << Num(*hb)
            << "  H_adapt(gamma0) = " << Num(*ha) << "\n"
            << "sym H_B_tight(gamma0) = " << Num(*shb)
            << "  sym H_adapt(gamma0) = " << Num(*sha) << "\n"
            << (pass ? "PASS" : "FAIL") << ": H_adapt(gamma0) - H_B_tight(gamma0) = "
            << Num(gap) << (pass ? " > 0" : " <= 0") << "\n";
  return pass ? 0 : kExitError;
}

// moments -------------------------------------------------------------------

int RunMoments(const CommonFlags& flags, std::optional<int> regime_flag,
               const std::string& q_text, const std::string& sigma_text) {
  absl::StatusOr<Config> cfg =
      LoadConfig(flags.config, {"regime", "q_list", "sigma_list", "mu"});
  if (!cfg.ok()) return Fail(cfg.status());
  int flag = 0;
  if (regime_flag.has_value()) {
    flag = *regime_flag;
  } else if (cfg->Has("regime")) {
    absl::StatusOr<int64_t> v = cfg->GetInt("regime");
    if (!v.ok()) return Fail(v.status());
    flag = static_cast<int>(*v);
  }
  absl::StatusOr<Regime> regime = RegimeFromFlag(flag);
  if (!regime.ok()) return Fail(regime.status());
  auto list = [&](const std::string& text, const std::string& key,
                  std::vector<double> fallback)
      -> absl::StatusOr<std::vector<double>> {
    if (!text.empty()) return ParseNumberList(text);
    if (cfg->Has(key)) return cfg->GetDoubleList(key);
    return fallback;
  };
  const std::vector<double> default_q =
      *regime == Regime::kSmallQ ? std::vector<double>{0.001, 0.01, 0.1}
                                 : std::vector<double>{0.9, 0.95, 0.99};
  absl::StatusOr<std::vector<double>> qs = list(q_text, "q_list", default_q);
  if (!qs.ok()) return Fail(qs.status());
  absl::StatusOr<std::vector<double>> sigmas =
      list(sigma_text, "sigma_list", {1.0, 2.0, 4.0});
  if (!sigmas.ok()) return Fail(sigmas.status());
  absl::StatusOr<double> mu = GetDoubleOr(*cfg, "mu", 1.0);
  if (!mu.ok()) return Fail(mu.status());
  for (double q : *qs) {
    // Regime 0 covers q in (0, 0.2), regime 1 covers (0.8, 1].
    const bool in_regime = *regime == Regime::kSmallQ ? (q > 0.0 && q < 0.2)
                                                      : (q > 0.8 && q <= 1.0);
    if (!in_regime) {
      return Fail(absl::InvalidArgumentError(absl::StrFormat(
          "q = %g is outside the range of regime %d", q, RegimeFlag(*regime))));
    }
  }
  if (absl::Status s = PrepareOut(flags.out); !s.ok()) return Fail(s);
  absl::StatusOr<std::vector<ApproxErrorRow>> rows =
      ApproxErrorCurves(*regime, *qs, *sigmas, *mu);
  if (!rows.ok()) return Fail(rows.status());
  Table t{{"q", "sigma", "rel_err_mean", "rel_err_var", "ratio_mean_over_var"},
          {}};
  for (const ApproxErrorRow& r : *rows) {
    t.rows.push_back({r.q, r.sigma, r.rel_err_mean, r.rel_err_var,
                      r.ratio_mean_over_var});
  }
  const std::string name =
      absl::StrFormat("moments_regime%d.csv", RegimeFlag(*regime));
  if (absl::Status s =
          WriteFile(OutPath(flags, name), WriteCsv(t, kCliPrecision));
      !s.ok()) {
    return Fail(s);
  }
  std::cout << WriteCsv(t, 6);
  return 0;
}

// compare-filters and accountant-run ----------------------------------------

absl::StatusOr<ComparisonConfig> LoadComparison(const CommonFlags& flags) {
  absl::StatusOr<Config> cfg = LoadConfig(flags.config, ComparisonConfigKeys());
  if (!cfg.ok()) return cfg.status();
  absl::StatusOr<ComparisonConfig> c = ComparisonConfigFromConfig(*cfg);
  if (!c.ok()) return c.status();
  if (flags.seed.has_value()) c->seed = *flags.seed;
  return c;
}

json CltJson(const CltCertificate& clt) {
  json j;
  j["valid"] = clt.valid;
  j["diagnostic"] = clt.diagnostic;
  j["m1"] = clt.params.m1;
  j["m2"] = clt.params.m2;
  j["v"] = clt.params.v;
  j["eta1"] = clt.params.eta1;
  j["eta2"] = clt.params.eta2;
  j["kappa"] = clt.params.kappa;
  j["rho"] = clt.params.rho;
  j["C"] = clt.params.c;
  if (clt.band.has_value()) {
    j["mu"] = clt.band->mu;
    j["phi"] = clt.band->phi;
    j["delta_band"] = clt.band->delta;
  }
  return j;
}

int RunCompareFilters(const CommonFlags& flags) {
  absl::StatusOr<ComparisonConfig> config = LoadComparison(flags);
  if (!config.ok()) return Fail(config.status());
  if (absl::Status s = PrepareOut(flags.out); !s.ok()) return Fail(s);
  absl::StatusOr<ComparisonReport> report = RunComparisonScenario(*config);
  if (!report.ok()) return Fail(report.status());
  Table t{{"delta", "eps_gdp", "eps_rdp"}, {}};
  for (const ComparisonRow& r : report->rows) {
    t.rows.push_back({r.delta, r.eps_gdp, r.eps_rdp});
  }
  json summary;
  summary["B"] = report->budget;
  summary["B_consumed"] = report->consumed;
  summary["mu"] = report->mu;
  summary["gdp_steps"] = report->gdp_steps;
  summary["gdp_halted"] = report->gdp_halted;
  summary["rdp_steps"] = report->rdp_steps;
  summary["final_step_slack"] = report->final_step_slack;
  summary["budget_conservation"] = report->conservation;
  summary["rdp_conversion"] =
      config->rdp_conversion == RdpConversion::kImproved ? "improved"
                                                         : "classic";
  summary["sigma_schedule"] = config->sigma.ToString();
  summary["q"] = config->q;
  summary["T"] = config->horizon;
  summary["seed"] = config->seed;
  summary["warnings"] = report->warnings;
  summary["clt"] = CltJson(report->clt);
  json rows = json::array();
  for (const ComparisonRow& r : report->rows) {
    rows.push_back({{"delta", r.delta},
                    {"eps_gdp", r.eps_gdp},
                    {"eps_rdp", r.eps_rdp},
                    {"rdp_order", r.rdp_order}});
  }
  summary["rows"] = rows;
  if (absl::Status s = WriteFile(OutPath(flags, "comparison.csv"),
                                 WriteCsv(t, kCliPrecision));
      !s.ok()) {
    return Fail(s);
  }
  if (absl::Status s =
          WriteFile(OutPath(flags, "summary.json"), summary.dump(2) + "\n");
      !s.ok()) {
    return Fail(s);
  }
  std::cout << "B = " << Num(report->consumed) << "  mu = sqrt(2B) = "
            << Num(report->mu) << "  steps gdp/rdp = " << report->gdp_steps
            << "/" << report->rdp_steps << "\n";
  std::cout << WriteCsv(t, 6);
  if (!report->clt.valid) std::cout << "clt: " << report->clt.diagnostic << "\n";
  for (const std::string& w : report->warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  return report->conservation ? 0 : kExitError;
}

int RunAccountant(const CommonFlags& flags) {
  absl::StatusOr<ComparisonConfig> config = LoadComparison(flags);
  if (!config.ok()) return Fail(config.status());
  if (absl::Status s = PrepareOut(flags.out); !s.ok()) return Fail(s);
  AccountantOptions options;
  options.regime = config->regime;
  options.budget =
      config->budget < 0.0 ? ScheduleBudget(*config) : config->budget;
  options.q_bar = config->q_bar;
  options.sigma_bar = config->sigma_bar;
  options.deduction = config->deduction;
  options.seed = config->seed;
  const std::vector<double> sigmas = config->sigma.Values(config->horizon);
  RngStreams rng(config->seed);
  Table steps{{"t", "q", "sigma", "clip", "budget_clip", "remaining_before",
               "sampled", "output_norm"},
              {}};
  json summary;
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  if (config->accountant == AccountantKind::kGdpFilter) {
    absl::StatusOr<GdpAccountant> acc = GdpAccountant::Create(options);
    if (!acc.ok()) return Fail(acc.status());
    for (int t = 1; t <= config->horizon && !acc->halted(); ++t) {
      absl::StatusOr<StepOutput> out = acc->Step(
          config->q, sigmas[t - 1], config->clip,
          SyntheticGradients(config->gradients, config->clip, t,
                             config->dataset_size, rng.gradients()));
      if (!out.ok()) return Fail(out.status());
      const StepRecord& r = acc->history().back();
      steps.rows.push_back({static_cast<double>(r.t), r.q, r.sigma, r.clip,
                            r.budget_clip, r.remaining_before,
                            static_cast<double>(r.sampled), norm(out->output)});
    }
    acc->Finish();
    summary["accountant"] = "gdp_filter";
    summary["steps"] = acc->steps();
    summary["halted"] = acc->halted();
    summary["B"] = acc->ledger().total();
    summary["B_consumed"] = acc->ledger().consumed();
    summary["B_remaining"] = acc->ledger().remaining();
    summary["mu"] = std::sqrt(2.0 * acc->ledger().consumed());
    summary["final_step_slack"] = acc->FinalStepSlack();
    summary["budget_conservation"] = acc->ledger().ConservationHolds();
    summary["warnings"] = acc->warnings();
    absl::StatusOr<CltCertificate> clt =
        CltCertificateFor(*acc, config->clt_constant);
    if (!clt.ok()) return Fail(clt.status());
    summary["clt"] = CltJson(*clt);
  } else {
    absl::StatusOr<IndividualAccountant> acc = IndividualAccountant::Create(
        options, std::vector<double>(config->dataset_size, options.budget));
    if (!acc.ok()) return Fail(acc.status());
    for (int t = 1; t <= config->horizon; ++t) {
      absl::StatusOr<StepOutput> out = acc->Step(
          config->q, sigmas[t - 1], config->clip,
          SyntheticGradients(config->gradients, config->clip, t,
                             config->dataset_size, rng.gradients()));
      if (!out.ok()) return Fail(out.status());
      const IndividualStepRecord& r = acc->history().back();
      double min_remaining = INFINITY;
      for (double b : r.remaining_before) min_remaining = std::min(min_remaining, b);
      steps.rows.push_back({static_cast<double>(r.shared.t), r.shared.q,
                            r.shared.sigma, r.shared.clip, r.shared.budget_clip,
                            min_remaining, static_cast<double>(r.shared.sampled),
                            norm(out->output)});
    }
    acc->Finish();
    bool conservation = true;
    double min_consumed = INFINITY;
    double max_consumed = 0.0;
    int exhausted = 0;
    for (const BudgetLedger& l : acc->ledgers()) {
      conservation = conservation && l.ConservationHolds();
      min_consumed = std::min(min_consumed, l.consumed());
      max_consumed = std::max(max_consumed, l.consumed());
      exhausted += l.exhausted() ? 1 : 0;
    }
    summary["accountant"] = "individual";
    summary["steps"] = acc->steps();
    summary["points"] = acc->size();
    summary["exhausted_points"] = exhausted;
    summary["B_consumed_min"] = min_consumed;
    summary["B_consumed_max"] = max_consumed;
    summary["budget_conservation"] = conservation;
    summary["warnings"] = acc->warnings();
  }
  summary["seed"] = config->seed;
  if (absl::Status s = WriteFile(OutPath(flags, "steps.csv"),
                                 WriteCsv(steps, kCliPrecision));
      !s.ok()) {
    return Fail(s);
  }
  if (absl::Status s =
          WriteFile(OutPath(flags, "summary.json"), summary.dump(2) + "\n");
      !s.ok()) {
    return Fail(s);
  }
  std::cout << summary.dump(2) << "\n";
  return summary["budget_conservation"].get<bool>() ? 0 : kExitError;
}

// compose -------------------------------------------------------------------

// "gaussian(mu)" or "subsampled(q, mu)".
absl::StatusOr<DensityPair> ParseFactor(absl::string_view text, double sigma) {
  absl::string_view s = absl::StripAsciiWhitespace(text);
  auto args = [&](absl::string_view prefix)
      -> absl::StatusOr<std::vector<double>> {
    absl::string_view body = s;
    absl::ConsumePrefix(&body, prefix);
    if (!absl::ConsumeSuffix(&body, ")")) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unterminated factor '%s'", s));
    }
    return ParseNumberList(std::string(body));
  };
  if (absl::StartsWith(s, "gaussian(")) {
    absl::StatusOr<std::vector<double>> a = args("gaussian(");
    if (!a.ok()) return a.status();
    if (a->size() != 1) {
      return absl::InvalidArgumentError("gaussian(mu) takes one argument");
    }
    return DensityPair::Gaussian((*a)[0], sigma);
  }
  if (absl::StartsWith(s, "subsampled(")) {
    absl::StatusOr<std::vector<double>> a = args("subsampled(");
    if (!a.ok()) return a.status();
    if (a->size() != 2) {
      return absl::InvalidArgumentError("subsampled(q, mu) takes two arguments");
    }
    return DensityPair::Mixture((*a)[0], (*a)[1], sigma);
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown factor descriptor '%s' (gaussian(mu) or subsampled(q, mu))", s));
}

// Factors separated by ';'.
absl::StatusOr<std::vector<DensityPair>> ParseFactorList(
    absl::string_view text, double sigma) {
  std::vector<DensityPair> out;
  for (absl::string_view part : absl::StrSplit(text, ';')) {
    if (absl::StripAsciiWhitespace(part).empty()) continue;
    absl::StatusOr<DensityPair> p = ParseFactor(part, sigma);
    if (!p.ok()) return p.status();
    out.push_back(*p);
  }
  return out;
}

int RunCompose(const CommonFlags& flags) {
  absl::StatusOr<Config> cfg =
      LoadConfig(flags.config, {"factors", "budget", "sigma", "tol"});
  if (!cfg.ok()) return Fail(cfg.status());
  absl::StatusOr<double> sigma = GetDoubleOr(*cfg, "sigma", 1.0);
  if (!sigma.ok()) return Fail(sigma.status());
  FilterOptions filter_options;
  absl::StatusOr<double> tol = GetDoubleOr(*cfg, "tol", filter_options.tol);
  if (!tol.ok()) return Fail(tol.status());
  filter_options.tol = *tol;
  const std::string factor_text =
      cfg->Has("factors") ? *cfg->GetString("factors") : "";
  absl::StatusOr<std::vector<DensityPair>> factors =
      ParseFactorList(factor_text, *sigma);
  if (!factors.ok()) return Fail(factors.status());
  if (!cfg->Has("budget")) {
    return Fail(absl::InvalidArgumentError("missing key 'budget'"));
  }
  // The budget is the maximum over '|'-separated factor lists.
  std::optional<PrivacyProfile> budget;
  for (absl::string_view alt : absl::StrSplit(*cfg->GetString("budget"), '|')) {
    absl::StatusOr<std::vector<DensityPair>> pairs =
        ParseFactorList(alt, *sigma);
    if (!pairs.ok()) return Fail(pairs.status());
    absl::StatusOr<PrivacyProfile> h = ComposeProfile(*pairs);
    if (!h.ok()) return Fail(h.status());
    if (!budget.has_value()) {
      budget = *h;
    } else {
      absl::StatusOr<PrivacyProfile> m = MaxProfile(*budget, *h);
      if (!m.ok()) return Fail(m.status());
      budget = *m;
    }
  }
  if (absl::Status s = PrepareOut(flags.out); !s.ok()) return Fail(s);
  absl::StatusOr<PrivacyProfile> composed = ComposeProfile(*factors);
  if (!composed.ok()) return Fail(composed.status());
  absl::StatusOr<TradeoffCurve> curve = ProfileToTradeoff(*composed);
  if (!curve.ok()) return Fail(curve.status());
  absl::StatusOr<FilterDecision> decision =
      FdpFilter(*budget, *composed, filter_options);
  if (!decision.ok()) return Fail(decision.status());
  json summary;
  summary["decision"] = FilterKindName(decision->kind);
  summary["margin"] = decision->margin;
  summary["tol"] = filter_options.tol;
  json provenance = json::array();
  for (const DensityPair& p : *factors) provenance.push_back(p.Describe());
  summary["factors"] = provenance;
  for (const auto& [name, content] :
       std::vector<std::pair<std::string, std::string>>{
           {"composed_profile.csv", ProfileToCsv(*composed, kCliPrecision)},
           {"composed_curve.csv", CurveToCsv(*curve, kCliPrecision)},
           {"budget_profile.csv", ProfileToCsv(*budget, kCliPrecision)},
           {"decision.json", summary.dump(2) + "\n"}}) {
    if (absl::Status s = WriteFile(OutPath(flags, name), content); !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << "decision " << FilterKindName(decision->kind) << " margin "
            << Num(decision->margin) << "\n";
  return 0;
}

}  // namespace
}  // namespace fdp

int main(int argc, char** argv) {
  CLI::App app{"f-DP accounting under fully adaptive composition"};
  app.require_subcommand(1);
  fdp::CommonFlags flags;
  auto add_common = [&flags](CLI::App* sub, bool config_required) {
    sub->add_option("--out", flags.out, "output directory")->required();
    auto* c = sub->add_option("--config", flags.config, "scenario file")
                  ->check(CLI::ExistingFile);
    if (config_required) c->required();
    sub->add_option("--seed", flags.seed, "random seed (overrides config)");
  };
  CLI::App* ce = app.add_subcommand("counterexample",
                                    "three-step adaptive composition example");
  add_common(ce, false);
  CLI::App* mo =
      app.add_subcommand("moments", "PLRV moment approximation errors");
  add_common(mo, false);
  std::optional<int> regime;
  std::string q_list;
  std::string sigma_list;
  mo->add_option("--regime", regime, "0 (q -> 0) or 1 (q -> 1)");
  mo->add_option("--q-list", q_list, "comma-separated sampling rates");
  mo->add_option("--sigma-list", sigma_list, "comma-separated noise scales");
  CLI::App* cf = app.add_subcommand(
      "compare-filters", "approximate GDP filter against RDP accounting");
  add_common(cf, true);
  CLI::App* co =
      app.add_subcommand("compose", "tensor products and the f-DP filter");
  add_common(co, true);
  CLI::App* ar =
      app.add_subcommand("accountant-run", "run an accountant on a schedule");
  add_common(ar, true);
  CLI11_PARSE(app, argc, argv);
  if (ce->parsed()) return fdp::RunCounterexample(flags);
  if (mo->parsed()) return fdp::RunMoments(flags, regime, q_list, sigma_list);
  if (cf->parsed()) return fdp::RunCompareFilters(flags);
  if (co->parsed()) return fdp::RunCompose(flags);
  if (ar->parsed()) return fdp::RunAccountant(flags);
  return 2;
}
