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

#ifndef FDP_PIECEWISE_LINEAR_H_
#define FDP_PIECEWISE_LINEAR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace fdp {

struct Point {
  double x;
  double y;
};

// A piecewise-linear function given by its knots. x is strictly increasing.
struct PiecewiseLinear {
  std::vector<double> x;
  std::vector<double> y;

  // Linear interpolation, clamped to the end values outside [x.front(),
  // x.back()].
  double operator()(double t) const;
};

// Linear interpolation on sorted knots, clamped outside the knot range.
double Interpolate(std::span<const double> x, std::span<const double> y,
                   double t);

// Indices of the vertices of the lower convex hull of the points (x_i, y_i),
// x strictly increasing (Andrew's monotone chain).
std::vector<size_t> LowerHullIndices(std::span<const double> x,
                                     std::span<const double> y);

// Values of the lower hull evaluated at every input abscissa.
std::vector<double> LowerHullValues(std::span<const double> x,
                                    std::span<const double> y);

}  // namespace fdp

#endif  // FDP_PIECEWISE_LINEAR_H_
