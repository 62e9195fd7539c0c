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

#ifndef FDP_PARALLEL_H_
#define FDP_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace fdp {

// Worker count from the FDP_THREADS environment variable (default 1).
int ThreadCount();

// Calls body(i) for i in [0, n), split into contiguous chunks over
// ThreadCount() threads. Iterations must be independent.
void ParallelFor(size_t n, const std::function<void(size_t)>& body);

}  // namespace fdp

#endif  // FDP_PARALLEL_H_
