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

#include "fdp/grid.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace fdp {

absl::StatusOr<std::shared_ptr<const GammaGrid>> GammaGrid::Create(
    const GammaGridOptions& options) {
  if (!(options.fine_log_radius > 0.0) || options.fine_half_points < 1 ||
      options.coarse_stride < 1 ||
      !(options.max_log_radius >= options.fine_log_radius) ||
      !std::isfinite(options.max_log_radius) || options.max_log_radius > 700) {
    return absl::InvalidArgumentError("invalid gamma grid options");
  }
  std::shared_ptr<GammaGrid> grid(new GammaGrid());
  grid->options_ = options;
  grid->step_ = options.fine_log_radius / options.fine_half_points;

  std::vector<int64_t> positive;
  for (int64_t n = 0; n <= options.fine_half_points; ++n) positive.push_back(n);
  const int64_t max_n =
      static_cast<int64_t>(std::floor(options.max_log_radius / grid->step_));
  for (int64_t n = options.fine_half_points + options.coarse_stride; n <= max_n;
       n += options.coarse_stride) {
    positive.push_back(n);
  }

  grid->gamma_.push_back(0.0);
  grid->lattice_.push_back(0);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it == 0) continue;
    grid->lattice_.push_back(-*it);
  }
  grid->one_index_ = grid->lattice_.size();
  for (int64_t n : positive) grid->lattice_.push_back(n);
  for (size_t i = 1; i < grid->lattice_.size(); ++i) {
    grid->gamma_.push_back(std::exp(grid->lattice_[i] * grid->step_));
  }
  grid->gamma_[grid->one_index_] = 1.0;
  return std::shared_ptr<const GammaGrid>(std::move(grid));
}

std::shared_ptr<const GammaGrid> GammaGrid::Standard() {
  static const std::shared_ptr<const GammaGrid> kGrid =
      *GammaGrid::Create(GammaGridOptions());
  return kGrid;
}

size_t GammaGrid::Locate(double x) const {
  if (x <= 0.0) return 0;
  auto it = std::upper_bound(gamma_.begin(), gamma_.end(), x);
  return static_cast<size_t>(it - gamma_.begin()) - 1;
}

bool GammaGrid::SameAs(const GammaGrid& other) const {
  return this == &other || (step_ == other.step_ && lattice_ == other.lattice_);
}

absl::StatusOr<std::vector<double>> MakeAlphaGrid(int uniform_intervals,
                                                  int refinement_points,
                                                  double smallest_offset) {
  if (uniform_intervals < 1 || refinement_points < 0 ||
      !(smallest_offset > 0.0)) {
    return absl::InvalidArgumentError("invalid alpha grid parameters");
  }
  const double h = 1.0 / uniform_intervals;
  if (refinement_points > 0 && !(smallest_offset < h)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "smallest offset %g must be below the uniform step %g",
        smallest_offset, h));
  }
  std::vector<double> grid;
  grid.reserve(uniform_intervals + 1 + 2 * refinement_points);
  for (int i = 0; i <= uniform_intervals; ++i) {
    grid.push_back(static_cast<double>(i) / uniform_intervals);
  }
  const double log_lo = std::log(smallest_offset);
  const double log_hi = std::log(h);
  for (int j = 0; j < refinement_points; ++j) {
    const double x =
        std::exp(log_lo + (log_hi - log_lo) * j / refinement_points);
    grid.push_back(x);
    grid.push_back(1.0 - x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

const std::vector<double>& StandardAlphaGrid() {
  static const std::vector<double> kGrid = *MakeAlphaGrid(4000, 32, 1e-9);
  return kGrid;
}

}  // namespace fdp
