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

#include "evostage/placement/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace evostage::placement {

std::vector<double> adam_step(AdamState& state, std::vector<double>& parameters,
                              const std::vector<double>& gradient, double learning_rate) {
  if (parameters.size() != state.m.size() || gradient.size() != state.m.size()) {
    throw std::invalid_argument("adam_step dimension mismatch");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  for (double g : gradient) {
    if (!std::isfinite(g)) throw std::invalid_argument("adam_step requires a finite gradient");
  }
  state.step += 1;
  const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  std::vector<double> delta(parameters.size());
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * gradient[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * gradient[i] * gradient[i];
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    delta[i] = -learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    parameters[i] += delta[i];
  }
  return delta;
}

}  // namespace evostage::placement
