// Copyright 2025 The EvoStage Authors
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

#ifndef EVOSTAGE_PLACEMENT_NUMERICS_HPP_
#define EVOSTAGE_PLACEMENT_NUMERICS_HPP_

#include <vector>

#include "evostage/placement/instance.hpp"

namespace evostage::placement {

// Positions are packed as [x_0..x_{n-1}, y_0..y_{n-1}] throughout.

// Half-perimeter wirelength: sum over nets of (x span + y span).
double hpwl(const PlacementInstance& instance, const std::vector<double>& positions);

struct SmoothWlResult {
  double value = 0.0;
  std::vector<double> gradient;  // d value / d positions, length 2n
};

// Log-sum-exp smoothing of HPWL: per net and axis,
//   gamma * log sum exp(x/gamma) + gamma * log sum exp(-x/gamma),
// evaluated with shifted exponents for numerical stability.
SmoothWlResult smooth_wl(const PlacementInstance& instance, const std::vector<double>& positions,
                         double gamma);

struct DensityResult {
  double overflow = 0.0;  // sum_b max(0, usage_b - d_t * cap_b) / total cell area
  double penalty = 0.0;   // sum_b max(0, usage_b - d_t * cap_b)^2
  std::vector<double> gradient;  // d penalty / d positions, length 2n
};

// Bin usage via area-proportional assignment of each cell rectangle (centered
// on its position) to the bins it overlaps.
DensityResult density_overflow(const PlacementInstance& instance,
                               const std::vector<double>& positions);

struct ObjectiveResult {
  double value = 0.0;      // smooth_wl + lambda * penalty
  double smooth_wl = 0.0;
  double penalty = 0.0;
  double overflow = 0.0;
  std::vector<double> gradient;  // length 2n
};

// Penalized subproblem objective f = WL_gamma + lambda * penalty.
ObjectiveResult penalized_objective(const PlacementInstance& instance,
                                    const std::vector<double>& positions, double gamma,
                                    double lambda);

}  // namespace evostage::placement

#endif  // EVOSTAGE_PLACEMENT_NUMERICS_HPP_
