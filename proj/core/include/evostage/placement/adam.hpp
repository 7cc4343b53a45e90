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

#ifndef EVOSTAGE_PLACEMENT_ADAM_HPP_
#define EVOSTAGE_PLACEMENT_ADAM_HPP_

#include <cstddef>
#include <vector>

namespace evostage::placement {

// Canonical bias-corrected Adam (beta1=0.9, beta2=0.999, eps=1e-8).
struct AdamState {
  explicit AdamState(std::size_t dimension)
      : m(dimension, 0.0), v(dimension, 0.0) {}

  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  long step = 0;          // t, incremented per update
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One update in place:
//   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2;  t <- t+1
//   delta = -lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
// Returns the applied delta; `parameters` is updated in place.
std::vector<double> adam_step(AdamState& state, std::vector<double>& parameters,
                              const std::vector<double>& gradient, double learning_rate);

}  // namespace evostage::placement

#endif  // EVOSTAGE_PLACEMENT_ADAM_HPP_
