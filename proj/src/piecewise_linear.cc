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

#include "fdp/piecewise_linear.h"

#include <algorithm>

namespace fdp {

double Interpolate(std::span<const double> x, std::span<const double> y,
                   double t) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  const size_t hi = static_cast<size_t>(
      std::upper_bound(x.begin(), x.end(), t) - x.begin());
  const size_t lo = hi - 1;
  const double w = (t - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + w * (y[hi] - y[lo]);
}

double PiecewiseLinear::operator()(double t) const {
  return Interpolate(x, y, t);
}

std::vector<size_t> LowerHullIndices(std::span<const double> x,
                                     std::span<const double> y) {
  std::vector<size_t> hull;
  hull.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    while (hull.size() >= 2) {
      const size_t a = hull[hull.size() - 2];
      const size_t b = hull.back();
      // Drop b when it lies on or above the chord from a to i.
      const double cross =
          (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

std::vector<double> LowerHullValues(std::span<const double> x,
                                    std::span<const double> y) {
  const std::vector<size_t> hull = LowerHullIndices(x, y);
  std::vector<double> out(x.size());
  size_t seg = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    while (seg + 1 < hull.size() && x[hull[seg + 1]] < x[i]) ++seg;
    if (seg + 1 >= hull.size() || i == hull[seg]) {
      out[i] = y[hull[seg]];
      continue;
    }
    const size_t a = hull[seg];
    const size_t b = hull[seg + 1];
    if (i == b) {
      out[i] = y[b];
      continue;
    }
    const double w = (x[i] - x[a]) / (x[b] - x[a]);
    out[i] = y[a] + w * (y[b] - y[a]);
  }
  return out;
}

}  // namespace fdp
