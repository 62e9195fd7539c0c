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

#ifndef FDP_GRID_H_
#define FDP_GRID_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"

namespace fdp {

// Layout of the gamma grid used by privacy profiles.
//
// Positive points sit on a log lattice: ln(gamma) = n * step with integer n.
// The fine region |ln gamma| <= fine_log_radius uses every lattice index; the
// tails use every coarse_stride-th index out to max_log_radius. Since the index
// set is symmetric, the grid is closed under gamma -> 1/gamma, and gamma = 1 is
// always a knot. gamma = 0 is prepended.
struct GammaGridOptions {
  double fine_log_radius = 9.210340371976184;  // ln(1e4)
  int fine_half_points = 1000;
  int coarse_stride = 11;
  double max_log_radius = 120.0;
};

class GammaGrid {
 public:
  static absl::StatusOr<std::shared_ptr<const GammaGrid>> Create(
      const GammaGridOptions& options);

  // The default grid, built once.
  static std::shared_ptr<const GammaGrid> Standard();

  size_t size() const { return gamma_.size(); }
  double gamma(size_t i) const { return gamma_[i]; }
  const std::vector<double>& values() const { return gamma_; }

  // Lattice index n with ln(gamma_i) = n * step(); undefined for i = 0.
  int64_t lattice(size_t i) const { return lattice_[i]; }
  double log_gamma(size_t i) const { return lattice_[i] * step_; }
  double step() const { return step_; }
  int64_t max_lattice() const { return lattice_.back(); }

  // Index of 1 / gamma_i for i >= 1.
  size_t Reciprocal(size_t i) const { return size() - i; }

  // Index of the knot gamma = 1.
  size_t OneIndex() const { return one_index_; }

  // Largest i with gamma_i <= x (x >= 0). Returns size() - 1 beyond the grid.
  size_t Locate(double x) const;

  const GammaGridOptions& options() const { return options_; }

  bool SameAs(const GammaGrid& other) const;

 private:
  GammaGrid() = default;

  GammaGridOptions options_;
  double step_ = 0.0;
  size_t one_index_ = 0;
  std::vector<double> gamma_;
  std::vector<int64_t> lattice_;
};

// Default alpha grid for trade-off curves: 4001 uniform points on [0, 1] plus
// 32 geometric points at each end reaching down to 1e-9 from the endpoints.
const std::vector<double>& StandardAlphaGrid();

absl::StatusOr<std::vector<double>> MakeAlphaGrid(int uniform_intervals,
                                                  int refinement_points,
                                                  double smallest_offset);

}  // namespace fdp

#endif  // FDP_GRID_H_
