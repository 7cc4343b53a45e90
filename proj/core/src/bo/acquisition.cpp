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

#include "evostage/bo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evostage::bo {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ucb(double mu, double sigma, double kappa) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be non-negative");
  return -mu + kappa * sigma;
}

double ei(double mu, double sigma, double best_f) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  const double improvement = best_f - mu;
  if (sigma == 0.0) return std::max(improvement, 0.0);
  const double z = improvement / sigma;
  return improvement * normal_cdf(z) + sigma * normal_pdf(z);
}

std::size_t argmax_utility(const std::vector<double>& utilities) {
  if (utilities.empty()) throw std::invalid_argument("empty utility pool");
  std::size_t best = 0;
  for (std::size_t i = 1; i < utilities.size(); ++i) {
    if (utilities[i] > utilities[best]) best = i;
  }
  return best;
}

AcquisitionFn builtin_ei() {
  return [](const AcquisitionContext& context) {
    std::vector<double> utilities;
    utilities.reserve(context.points.size());
    for (const auto& point : context.points) {
      utilities.push_back(ei(point.mu, point.sigma, context.best_f));
    }
    return utilities;
  };
}

AcquisitionFn builtin_ucb(double kappa) {
  return [kappa](const AcquisitionContext& context) {
    std::vector<double> utilities;
    utilities.reserve(context.points.size());
    for (const auto& point : context.points) {
      utilities.push_back(ucb(point.mu, point.sigma, kappa));
    }
    return utilities;
  };
}

}  // namespace evostage::bo
