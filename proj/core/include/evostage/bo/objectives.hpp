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

#ifndef EVOSTAGE_BO_OBJECTIVES_HPP_
#define EVOSTAGE_BO_OBJECTIVES_HPP_

#include <string>
#include <vector>

namespace evostage::bo {

// A 2-D synthetic minimization objective in its standard closed form.
struct SyntheticObjective {
  std::string name;
  std::vector<double> lower;  // per-dimension bounds
  std::vector<double> upper;
  std::vector<double> optimum_location;
  double optimum_value = 0.0;

  int dimension() const { return static_cast<int>(lower.size()); }
  // Throws std::invalid_argument when x is outside the bounds.
  double evaluate(const std::vector<double>& x) const;
  // Maps a unit-cube point to the native bounds and evaluates there.
  double evaluate_unit(const std::vector<double>& unit_point) const;
};

// Supported names: "ackley2d", "rastrigin2d", "griewank2d", "levy2d".
SyntheticObjective make_synthetic(const std::string& name);
std::vector<std::string> synthetic_names();

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_OBJECTIVES_HPP_
