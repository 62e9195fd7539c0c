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

#include "fdp/scenario.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/string_view.h"
#include "absl/strings/match.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace fdp {

absl::StatusOr<SigmaSchedule> SigmaSchedule::Parse(const std::string& text) {
  absl::string_view s = absl::StripAsciiWhitespace(text);
  auto args = [&](absl::string_view prefix)
      -> absl::StatusOr<std::vector<double>> {
    absl::string_view body = s;
    absl::ConsumePrefix(&body, prefix);
    if (!absl::ConsumeSuffix(&body, ")")) {
      return absl::InvalidArgumentError(
          absl::StrFormat("unterminated schedule '%s'", text));
    }
    return ParseNumberList(std::string(body));
  };
  if (absl::StartsWith(s, "constant(")) {
    absl::StatusOr<std::vector<double>> a = args("constant(");
    if (!a.ok()) return a.status();
    if (a->size() != 1 || !((*a)[0] > 0.0)) {
      return absl::InvalidArgumentError("constant(s) needs one positive s");
    }
    return Constant((*a)[0]);
  }
  if (absl::StartsWith(s, "sin_block(")) {
    absl::StatusOr<std::vector<double>> a = args("sin_block(");
    if (!a.ok()) return a.status();
    if (a->size() != 2 || !((*a)[1] >= 1.0) ||
        (*a)[1] != std::floor((*a)[1])) {
      return absl::InvalidArgumentError(
          "sin_block(s, b) needs a base s and an integer block b >= 1");
    }
    return SinBlock((*a)[0], static_cast<int>((*a)[1]));
  }
  absl::StatusOr<double> v = ParseDouble(std::string(s));
  if (!v.ok() || !(*v > 0.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "unknown sigma schedule '%s' (use constant(s), sin_block(s, b) or a "
        "positive number)",
        text));
  }
  return Constant(*v);
}

SigmaSchedule SigmaSchedule::Constant(double sigma) {
  return SigmaSchedule(Kind::kConstant, sigma, 1);
}

SigmaSchedule SigmaSchedule::SinBlock(double base, int block) {
  return SigmaSchedule(Kind::kSinBlock, base, block);
}

double SigmaSchedule::At(int t, int horizon) const {
  if (kind_ == Kind::kConstant) return base_;
  const double blocks = std::ceil(static_cast<double>(t) / block_);
  return base_ + std::sin(std::numbers::pi / horizon * block_ * blocks);
}

std::vector<double> SigmaSchedule::Values(int horizon) const {
  std::vector<double> out(horizon);
  for (int t = 1; t <= horizon; ++t) out[t - 1] = At(t, horizon);
  return out;
}

std::string SigmaSchedule::ToString() const {
  if (kind_ == Kind::kConstant) return absl::StrFormat("constant(%.17g)", base_);
  return absl::StrFormat("sin_block(%.17g,%d)", base_, block_);
}

absl::StatusOr<GradientKind> ParseGradientKind(const std::string& text) {
  if (text == "constant_norm") return GradientKind::kConstantNorm;
  if (text == "decaying_norm") return GradientKind::kDecayingNorm;
  if (text == "random_direction") return GradientKind::kRandomDirection;
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown gradient source '%s' (constant_norm, decaying_norm, "
      "random_direction)",
      text));
}

const char* GradientKindName(GradientKind kind) {
  switch (kind) {
    case GradientKind::kConstantNorm:
      return "constant_norm";
    case GradientKind::kDecayingNorm:
      return "decaying_norm";
    case GradientKind::kRandomDirection:
      return "random_direction";
  }
  return "?";
}

const std::set<std::string>& ComparisonConfigKeys() {
  static const std::set<std::string>* const kKeys = new std::set<std::string>{
      "regime",       "B",           "T",
      "q",            "q_bar",       "sigma_bar",
      "sigma_schedule", "clip",      "seed",
      "delta_grid",   "rdp_conversion", "dataset_size",
      "gradient_source", "gradient_dim", "gradient_norm",
      "gradient_decay", "clt_constant", "deduction",
      "accountant"};
  return *kKeys;
}

absl::StatusOr<ComparisonConfig> ComparisonConfigFromConfig(const Config& c) {
  ComparisonConfig out;
  out.delta_grid = {1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
  if (c.Has("regime")) {
    absl::StatusOr<int64_t> v = c.GetInt("regime");
    if (!v.ok()) return v.status();
    absl::StatusOr<Regime> r = RegimeFromFlag(static_cast<int>(*v));
    if (!r.ok()) return r.status();
    out.regime = *r;
    if (out.regime == Regime::kLargeQ) out.q_bar = 0.9;
  }
  if (c.Has("B")) {
    absl::StatusOr<std::string> s = c.GetString("B");
    if (*s != "auto") {
      absl::StatusOr<double> v = c.GetDouble("B");
      if (!v.ok()) return v.status();
      if (!(*v >= 0.0) || !std::isfinite(*v)) {
        return absl::InvalidArgumentError("B must be finite and >= 0, or auto");
      }
      out.budget = *v;
    }
  }
  if (c.Has("T")) {
    absl::StatusOr<int64_t> v = c.GetInt("T");
    if (!v.ok()) return v.status();
    if (*v < 1 || *v > 100000000) {
      return absl::InvalidArgumentError("T must lie in [1, 1e8]");
    }
    out.horizon = static_cast<int>(*v);
  }
  struct Real {
    const char* key;
    double* target;
    double lo;
    double hi;
  };
  for (const Real& r : {Real{"q", &out.q, 0.0, 1.0},
                        Real{"q_bar", &out.q_bar, 0.0, 1.0},
                        Real{"sigma_bar", &out.sigma_bar, 1e-12, 1e12},
                        Real{"clip", &out.clip, 1e-300, 1e300},
                        Real{"clt_constant", &out.clt_constant, 0.0, 1e300},
                        Real{"gradient_norm", &out.gradients.norm, 0.0, 1e300},
                        Real{"gradient_decay", &out.gradients.decay, 0.0,
                             1.0}}) {
    if (!c.Has(r.key)) continue;
    absl::StatusOr<double> v = c.GetDouble(r.key);
    if (!v.ok()) return v.status();
    if (!(*v >= r.lo && *v <= r.hi)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s = %g outside [%g, %g]", r.key, *v, r.lo, r.hi));
    }
    *r.target = *v;
  }
  if (c.Has("sigma_schedule")) {
    absl::StatusOr<SigmaSchedule> s =
        SigmaSchedule::Parse(*c.GetString("sigma_schedule"));
    if (!s.ok()) return s.status();
    out.sigma = *s;
  }
  if (c.Has("seed")) {
    absl::StatusOr<uint64_t> v = c.GetUint("seed");
    if (!v.ok()) return v.status();
    out.seed = *v;
  }
  if (c.Has("delta_grid")) {
    absl::StatusOr<std::vector<double>> v = c.GetDoubleList("delta_grid");
    if (!v.ok()) return v.status();
    if (v->empty()) return absl::InvalidArgumentError("delta_grid is empty");
    for (double d : *v) {
      if (!(d > 0.0 && d < 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("delta_grid entries must lie in (0, 1), got %g", d));
      }
    }
    out.delta_grid = *v;
  }
  if (c.Has("rdp_conversion")) {
    const std::string s = *c.GetString("rdp_conversion");
    if (s == "classic") {
      out.rdp_conversion = RdpConversion::kClassic;
    } else if (s == "improved") {
      out.rdp_conversion = RdpConversion::kImproved;
    } else {
      return absl::InvalidArgumentError(absl::StrFormat(
          "rdp_conversion must be classic or improved, got '%s'", s));
    }
  }
  if (c.Has("dataset_size")) {
    absl::StatusOr<int64_t> v = c.GetInt("dataset_size");
    if (!v.ok()) return v.status();
    if (*v < 1 || *v > 10000000) {
      return absl::InvalidArgumentError("dataset_size must lie in [1, 1e7]");
    }
    out.dataset_size = static_cast<int>(*v);
  }
  if (c.Has("gradient_source")) {
    absl::StatusOr<GradientKind> k =
        ParseGradientKind(*c.GetString("gradient_source"));
    if (!k.ok()) return k.status();
    out.gradients.kind = *k;
  }
  if (c.Has("gradient_dim")) {
    absl::StatusOr<int64_t> v = c.GetInt("gradient_dim");
    if (!v.ok()) return v.status();
    if (*v < 1 || *v > 100000) {
      return absl::InvalidArgumentError("gradient_dim must lie in [1, 1e5]");
    }
    out.gradients.dimension = static_cast<int>(*v);
  }
  if (c.Has("deduction")) {
    const std::string s = *c.GetString("deduction");
    if (s == "lazy") {
      out.deduction = DeductionMode::kLazy;
    } else if (s == "eager") {
      out.deduction = DeductionMode::kEager;
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("deduction must be lazy or eager, got '%s'", s));
    }
  }
  if (c.Has("accountant")) {
    const std::string s = *c.GetString("accountant");
    if (s == "gdp_filter") {
      out.accountant = AccountantKind::kGdpFilter;
    } else if (s == "individual") {
      out.accountant = AccountantKind::kIndividual;
    } else {
      return absl::InvalidArgumentError(absl::StrFormat(
          "accountant must be gdp_filter or individual, got '%s'", s));
    }
  }
  return out;
}

}  // namespace fdp
