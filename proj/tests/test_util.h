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

#ifndef FDP_TESTS_TEST_UTIL_H_
#define FDP_TESTS_TEST_UTIL_H_

// Independent numerical oracles shared by the tests. They use only <cmath>
// (std::erfc) and plain fixed-step rules, never the library's quadrature or
// normal functions.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gtest/gtest.h"

#define FDP_TEST_CONCAT_INNER(a, b) a##b
#define FDP_TEST_CONCAT(a, b) FDP_TEST_CONCAT_INNER(a, b)

#define ASSERT_OK(expr)                                  \
  do {                                                   \
    const absl::Status fdp_test_status_ = (expr);        \
    ASSERT_TRUE(fdp_test_status_.ok()) << fdp_test_status_; \
  } while (0)

#define ASSERT_OK_AND_ASSIGN(lhs, expr)                                   \
  auto FDP_TEST_CONCAT(fdp_test_or_, __LINE__) = (expr);                  \
  ASSERT_TRUE(FDP_TEST_CONCAT(fdp_test_or_, __LINE__).ok())               \
      << FDP_TEST_CONCAT(fdp_test_or_, __LINE__).status();                \
  lhs = std::move(*FDP_TEST_CONCAT(fdp_test_or_, __LINE__))

namespace fdp::testing {

inline double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double PhiSf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }
inline double Pdf(double x, double mean = 0.0, double sd = 1.0) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
}

// Composite Simpson rule with n (even) intervals.
inline double Simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Midpoint Riemann sum with n cells.
inline double Riemann(const std::function<double(double)>& f, double a,
                      double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

// delta(eps) of N(0,1) vs N(mu,1).
inline double GaussianDelta(double mu, double eps) {
  return Phi(-eps / mu + mu / 2.0) - std::exp(eps) * Phi(-eps / mu - mu / 2.0);
}

// Trade-off function from a family of threshold tests: for thresholds t on
// [lo, hi] the test has type I error alpha(t) (increasing in t) and type II
// error beta(t). Returns beta interpolated at the target alpha.
inline double ThresholdScan(const std::function<double(double)>& alpha,
                            const std::function<double(double)>& beta,
                            double lo, double hi, double target, int n) {
  double prev_t = lo;
  double prev_a = alpha(lo);
  for (int i = 1; i <= n; ++i) {
    const double t = lo + (hi - lo) * i / n;
    const double a = alpha(t);
    if (a >= target) {
      const double w = a > prev_a ? (target - prev_a) / (a - prev_a) : 0.0;
      return beta(prev_t) + w * (beta(t) - beta(prev_t));
    }
    prev_t = t;
    prev_a = a;
  }
  return beta(hi);
}

// Uniform grid of n + 1 points on [0, 1].
inline std::vector<double> Linspace(double a, double b, int n) {
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
  return out;
}

}  // namespace fdp::testing

#endif  // FDP_TESTS_TEST_UTIL_H_
