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

#include "fdp/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fdp {

int ThreadCount() {
  const char* env = std::getenv("FDP_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return std::clamp(n, 1, 256);
}

void ParallelFor(size_t n, const std::function<void(size_t)>& body) {
  const size_t workers = std::min<size_t>(ThreadCount(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const size_t chunk = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    const size_t begin = w * chunk;
    const size_t end = std::min(n, begin + chunk);
    threads.emplace_back([begin, end, &body] {
      for (size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace fdp
