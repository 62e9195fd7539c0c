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

#include "fdp/quadrature.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace fdp {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
using GaussRule = boost::math::quadrature::gauss<double, 30>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// The error estimate is |Kronrod - Gauss|. Boost's own estimate carries an
// absolute floor near 4 eps that is not scaled by the panel width, which
// stalls refinement of narrow panels.
Panel Evaluate(const std::function<double(double)>& f, double a, double b) {
  const double value = Rule::integrate(f, a, b, 0, 0.0);
  const double gauss = GaussRule::integrate(f, a, b);
  return Panel{a, b, value, std::abs(value - gauss)};
}

}  // namespace

absl::StatusOr<double> Integrate(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    return absl::InvalidArgumentError("integration limits must be finite");
  }
  if (a == b) return 0.0;
  const int max_panels = 1 << std::min(options.max_depth, 20);

  std::priority_queue<Panel> panels;
  Panel first = Evaluate(f, a, b);
  double total = first.value;
  double total_error = first.error;
  panels.push(first);
  while (total_error > options.abs_tol &&
         total_error > options.rel_tol * std::abs(total) &&
         static_cast<int>(panels.size()) < max_panels) {
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    Panel left = Evaluate(f, worst.a, mid);
    Panel right = Evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_error += panels.top().error;
    panels.pop();
  }
  if (!std::isfinite(total)) {
    return absl::InternalError(absl::StrFormat(
        "quadrature on [%g, %g] produced a non-finite value", a, b));
  }
  if (total_error > options.abs_tol &&
      total_error > options.rel_tol * std::abs(total)) {
    return absl::InternalError(absl::StrFormat(
        "quadrature on [%g, %g] did not converge: achieved error %.3g "
        "(abs_tol %.3g, rel_tol %.3g)",
        a, b, total_error, options.abs_tol, options.rel_tol));
  }
  return total;
}

}  // namespace fdp
