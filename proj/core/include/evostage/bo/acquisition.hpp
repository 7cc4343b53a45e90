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

#ifndef EVOSTAGE_BO_ACQUISITION_HPP_
#define EVOSTAGE_BO_ACQUISITION_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace evostage::bo {

double normal_pdf(double z);
double normal_cdf(double z);  // Phi via erfc, accurate in both tails

// Lower-confidence-bound utility for objective minimization: -mu + kappa *
// sigma, maximized over candidates.
double ucb(double mu, double sigma, double kappa);

// Expected improvement (minimization form): z = (best_f - mu) / sigma,
// EI = (best_f - mu) * Phi(z) + sigma * phi(z); sigma = 0 degenerates to
// max(best_f - mu, 0).
double ei(double mu, double sigma, double best_f);

// Index of the maximal utility; ties break toward the lowest index.
// Throws std::invalid_argument on an empty pool.
std::size_t argmax_utility(const std::vector<double>& utilities);

// Posterior summary of one candidate point, on the standardized target scale.
struct PoolPoint {
  double mu = 0.0;
  double sigma = 0.0;
};

// Everything an acquisition function may look at when scoring the pool.
struct AcquisitionContext {
  int stage_index = 0;
  int iteration = 0;     // acquisition step within the run, 0-based
  double best_f = 0.0;   // incumbent minimum, standardized scale
  std::vector<PoolPoint> points;
};

// Scores every pool point; must return exactly points.size() utilities.
// Candidate-backed implementations throw CandidateFailure on misbehaviour.
using AcquisitionFn = std::function<std::vector<double>(const AcquisitionContext&)>;

AcquisitionFn builtin_ei();
AcquisitionFn builtin_ucb(double kappa = 2.0);

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_ACQUISITION_HPP_
