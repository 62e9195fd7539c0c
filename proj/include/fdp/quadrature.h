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

#ifndef FDP_QUADRATURE_H_
#define FDP_QUADRATURE_H_

#include <functional>

#include "absl/status/statusor.h"

namespace fdp {

struct QuadratureOptions {
  // Accept when the error estimate is below abs_tol or below
  // rel_tol * |integral|.
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  // At most 2^max_depth panels.
  int max_depth = 12;
};

// Globally adaptive Gauss-Kronrod (61-point) quadrature on the finite interval
// [a, b]: the panel with the largest error estimate is bisected until the
// tolerance is met. Kinks of the integrand must be split off by the caller.
// Fails with an internal error that reports the achieved tolerance if it
// cannot converge.
absl::StatusOr<double> Integrate(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureOptions& options = {});

}  // namespace fdp

#endif  // FDP_QUADRATURE_H_
