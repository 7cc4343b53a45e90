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

#ifndef EVOSTAGE_BO_GP_HPP_
#define EVOSTAGE_BO_GP_HPP_

#include <vector>

#include <Eigen/Dense>

namespace evostage::bo {

struct GPConfig {
  double signal_variance = 1.0;  // s^2
  double lengthscale = 0.2;      // per dimension, inputs on the unit cube
  double noise = 1e-6;           // sigma_n^2
  int max_jitter_retries = 3;    // noise escalates x10 per retry
};

struct Posterior {
  std::vector<double> mean;
  std::vector<double> stddev;
};

// Gaussian-process surrogate with a squared-exponential kernel.  Targets are
// standardized internally (zero mean, unit variance); posteriors are reported
// on both the raw and the standardized scale.  Immutable after fit.
class GPModel {
 public:
  // Fits on n x d inputs (rows inside the unit cube).  n = 0 yields a
  // prior-only model.  Throws std::runtime_error when the covariance cannot
  // be factorized even after jitter escalation.
  static GPModel fit(const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const GPConfig& config = GPConfig{});

  Posterior posterior(const std::vector<std::vector<double>>& queries) const;
  Posterior posterior_standardized(const std::vector<std::vector<double>>& queries) const;

  int size() const { return static_cast<int>(inputs_.rows()); }
  int dimension() const { return static_cast<int>(inputs_.cols()); }
  double noise_used() const { return noise_used_; }
  double target_mean() const { return target_mean_; }
  double target_stddev() const { return target_stddev_; }
  // Standardizes a raw objective value with the fitted scaling.
  double standardize(double raw) const { return (raw - target_mean_) / target_stddev_; }

  // Lower-triangular Cholesky factor of (K + noise I); exposed for tests.
  const Eigen::MatrixXd& factor() const { return factor_; }

 private:
  GPModel() = default;

  Eigen::VectorXd kernel_column(const Eigen::VectorXd& query) const;

  GPConfig config_;
  Eigen::MatrixXd inputs_;   // n x d
  Eigen::VectorXd targets_;  // standardized, length n
  Eigen::MatrixXd factor_;   // L with L L^T = K + noise I
  Eigen::VectorXd alpha_;    // (K + noise I)^{-1} y_standardized
  double target_mean_ = 0.0;
  double target_stddev_ = 1.0;
  double noise_used_ = 0.0;
};

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_GP_HPP_
