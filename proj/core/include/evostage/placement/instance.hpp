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

#ifndef EVOSTAGE_PLACEMENT_INSTANCE_HPP_
#define EVOSTAGE_PLACEMENT_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace evostage::placement {

struct Cell {
  double width = 0.0;
  double height = 0.0;
};

// A desk-scale analytic-placement problem: movable rectangular cells connected
// by nets inside a rectangular layout covered by a uniform bin grid.
struct PlacementInstance {
  std::vector<Cell> cells;
  std::vector<std::vector<int>> nets;  // each net lists >= 2 cell indices
  double layout_min_x = 0.0;
  double layout_min_y = 0.0;
  double layout_max_x = 0.0;
  double layout_max_y = 0.0;
  int bins_x = 0;
  int bins_y = 0;
  double target_density = 1.0;   // d_t in (0, 1]
  double target_overflow = 0.1;  // stop/legality threshold
  std::uint64_t position_seed = 0;

  int cell_count() const { return static_cast<int>(cells.size()); }
  double layout_width() const { return layout_max_x - layout_min_x; }
  double layout_height() const { return layout_max_y - layout_min_y; }
  double bin_width() const { return layout_width() / bins_x; }
  double bin_height() const { return layout_height() / bins_y; }
  double total_cell_area() const;

  // Throws std::invalid_argument when a structural invariant is broken
  // (empty nets, dangling cell references, infeasible density target, ...).
  void validate() const;
};

// Deterministic random instance used by tests and by the instance generator.
PlacementInstance make_random_instance(std::uint64_t seed, int cell_count, int net_count,
                                       int bins_per_side, double layout_size);

// Clustered-at-center starting positions with Gaussian jitter, clamped to the
// layout so every cell starts in-bounds.  Layout: [x_0..x_{n-1}, y_0..y_{n-1}].
std::vector<double> initial_positions(const PlacementInstance& instance);

// Plain-text round-trip (see docs in the repository README for the format).
std::string serialize_instance(const PlacementInstance& instance);
PlacementInstance parse_instance(const std::string& text);
PlacementInstance load_instance(const std::string& path);
void save_instance(const PlacementInstance& instance, const std::string& path);

}  // namespace evostage::placement

#endif  // EVOSTAGE_PLACEMENT_INSTANCE_HPP_
