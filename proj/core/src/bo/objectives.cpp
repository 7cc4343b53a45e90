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

#include "evostage/bo/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace evostage::bo {
namespace {

constexpr double kPi = std::numbers::pi;

double ackley(const std::vector<double>& x) {
  constexpr double a = 20.0;
  constexpr double b = 0.2;
  constexpr double c = 2.0 * kPi;
  double sum_sq = 0.0;
  double sum_cos = 0.0;
  for (double v : x) {
    sum_sq += v * v;
    sum_cos += std::cos(c * v);
  }
  const double d = static_cast<double>(x.size());
  return -a * std::exp(-b * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) + a + std::exp(1.0);
}

double rastrigin(const std::vector<double>& x) {
  constexpr double A = 10.0;
  double total = A * static_cast<double>(x.size());
  for (double v : x) total += v * v - A * std::cos(2.0 * kPi * v);
  return total;
}

double griewank(const std::vector<double>& x) {
  double sum = 0.0;
  double product = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    product *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - product + 1.0;
}

double levy(const std::vector<double>& x) {
  const std::size_t d = x.size();
  auto w = [&x](std::size_t i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  const double w0 = w(0);
  double total = std::sin(kPi * w0) * std::sin(kPi * w0);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    const double s = std::sin(kPi * wi + 1.0);
    total += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
  }
  const double wd = w(d - 1);
  const double s = std::sin(2.0 * kPi * wd);
  total += (wd - 1.0) * (wd - 1.0) * (1.0 + s * s);
  return total;
}

}  // namespace

double SyntheticObjective::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension()) {
    throw std::invalid_argument("objective dimension mismatch");
  }
  for (int i = 0; i < dimension(); ++i) {
    if (x[static_cast<std::size_t>(i)] < lower[static_cast<std::size_t>(i)] ||
        x[static_cast<std::size_t>(i)] > upper[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("point outside objective bounds");
    }
  }
  if (name == "ackley2d") return ackley(x);
  if (name == "rastrigin2d") return rastrigin(x);
  if (name == "griewank2d") return griewank(x);
  if (name == "levy2d") return levy(x);
  throw std::invalid_argument("unknown objective: " + name);
}

double SyntheticObjective::evaluate_unit(const std::vector<double>& unit_point) const {
  std::vector<double> native(unit_point.size());
  for (std::size_t i = 0; i < unit_point.size(); ++i) {
    native[i] = lower[i] + unit_point[i] * (upper[i] - lower[i]);
  }
  return evaluate(native);
}

SyntheticObjective make_synthetic(const std::string& name) {
  SyntheticObjective objective;
  objective.name = name;
  if (name == "ackley2d") {
    objective.lower = {-32.768, -32.768};
    objective.upper = {32.768, 32.768};
    objective.optimum_location = {0.0, 0.0};
  } else if (name == "rastrigin2d") {
    objective.lower = {-5.12, -5.12};
    objective.upper = {5.12, 5.12};
    objective.optimum_location = {0.0, 0.0};
  } else if (name == "griewank2d") {
    objective.lower = {-600.0, -600.0};
    objective.upper = {600.0, 600.0};
    objective.optimum_location = {0.0, 0.0};
  } else if (name == "levy2d") {
    objective.lower = {-10.0, -10.0};
    objective.upper = {10.0, 10.0};
    objective.optimum_location = {1.0, 1.0};
  } else {
    throw std::invalid_argument("unknown objective: " + name);
  }
  objective.optimum_value = 0.0;
  return objective;
}

std::vector<std::string> synthetic_names() {
  return {"ackley2d", "rastrigin2d", "griewank2d", "levy2d"};
}

}  // namespace evostage::bo
