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

#include "evostage/staged_task.hpp"

#include <stdexcept>

namespace evostage {

std::vector<int> stage_boundaries(int total_units, int stage_count) {
  if (stage_count < 1) throw std::invalid_argument("stage_count must be >= 1");
  if (total_units < stage_count) {
    throw std::invalid_argument("total budget smaller than stage count");
  }
  std::vector<int> units(static_cast<std::size_t>(stage_count), total_units / stage_count);
  const int remainder = total_units % stage_count;
  for (int i = 0; i < remainder; ++i) {
    units[static_cast<std::size_t>(stage_count - 1 - i)] += 1;
  }
  return units;
}

}  // namespace evostage
