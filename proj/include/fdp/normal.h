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

#ifndef FDP_NORMAL_H_
#define FDP_NORMAL_H_

namespace fdp {

// Standard normal distribution helpers. All functions are pure.

// Phi(x), evaluated through erfc so the left tail keeps relative accuracy.
double NormalCdf(double x);

// 1 - Phi(x), accurate in the right tail.
double NormalSf(double x);

// Phi^{-1}(p) for p in [0, 1]; returns -inf at 0 and +inf at 1.
double NormalQuantile(double p);

double NormalPdf(double x);
double NormalLogPdf(double x);

}  // namespace fdp

#endif  // FDP_NORMAL_H_
