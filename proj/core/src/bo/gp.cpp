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

#include "evostage/bo/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace evostage::bo {
namespace {

double se_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const GPConfig& config) {
  const double scaled = (a - b).squaredNorm() / (config.lengthscale * config.lengthscale);
  return config.signal_variance * std::exp(-0.5 * scaled);
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  const auto cols = rows.front().size();
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged input matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = rows[i][j];
      if (v < 0.0 || v > 1.0) {
        throw std::invalid_argument("inputs must lie inside the unit cube");
      }
      matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return matrix;
}

}  // namespace

GPModel GPModel::fit(const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets, const GPConfig& config) {
  if (inputs.size() != targets.size()) {
    throw std::invalid_argument("inputs/targets size mismatch");
  }
  if (!(config.noise > 0.0)) throw std::invalid_argument("noise must be positive");

  GPModel model;
  model.config_ = config;
  model.inputs_ = to_matrix(inputs);
  model.noise_used_ = config.noise;

  const auto n = static_cast<Eigen::Index>(targets.size());
  if (n == 0) {
    model.target_mean_ = 0.0;
    model.target_stddev_ = 1.0;
    return model;
  }

  Eigen::VectorXd raw(n);
  for (Eigen::Index i = 0; i < n; ++i) raw(i) = targets[static_cast<std::size_t>(i)];
  model.target_mean_ = raw.mean();
  const double variance = (raw.array() - model.target_mean_).square().sum() / n;
  model.target_stddev_ = variance > 0.0 ? std::sqrt(variance) : 1.0;
  model.targets_ = (raw.array() - model.target_mean_) / model.target_stddev_;

  Eigen::MatrixXd covariance(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double k = se_kernel(model.inputs_.row(i), model.inputs_.row(j), config);
      covariance(i, j) = k;
      covariance(j, i) = k;
    }
  }

  double noise = config.noise;
  for (int attempt = 0; attempt <= config.max_jitter_retries; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(covariance +
                                    noise * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      model.factor_ = llt.matrixL();
      model.alpha_ = llt.solve(model.targets_);
      model.noise_used_ = noise;
      return model;
    }
    noise *= 10.0;
  }
  throw std::runtime_error("GP covariance factorization failed after jitter escalation");
}

Eigen::VectorXd GPModel::kernel_column(const Eigen::VectorXd& query) const {
  Eigen::VectorXd column(inputs_.rows());
  for (Eigen::Index i = 0; i < inputs_.rows(); ++i) {
    column(i) = se_kernel(inputs_.row(i).transpose(), query, config_);
  }
  return column;
}

Posterior GPModel::posterior_standardized(const std::vector<std::vector<double>>& queries) const {
  Posterior result;
  result.mean.reserve(queries.size());
  result.stddev.reserve(queries.size());
  const double prior_std = std::sqrt(config_.signal_variance);
  for (const auto& q : queries) {
    if (size() == 0) {
      result.mean.push_back(0.0);
      result.stddev.push_back(prior_std);
      continue;
    }
    if (static_cast<int>(q.size()) != dimension()) {
      throw std::invalid_argument("query dimension mismatch");
    }
    Eigen::VectorXd point(static_cast<Eigen::Index>(q.size()));
    for (std::size_t j = 0; j < q.size(); ++j) point(static_cast<Eigen::Index>(j)) = q[j];
    const Eigen::VectorXd k_star = kernel_column(point);
    const double mean = k_star.dot(alpha_);
    const Eigen::VectorXd v =
        factor_.triangularView<Eigen::Lower>().solve(k_star);
    double variance = config_.signal_variance - v.squaredNorm();
    if (variance < 0.0) variance = 0.0;
    result.mean.push_back(mean);
    result.stddev.push_back(std::sqrt(variance));
  }
  return result;
}

Posterior GPModel::posterior(const std::vector<std::vector<double>>& queries) const {
  Posterior result = posterior_standardized(queries);
  for (auto& m : result.mean) m = target_mean_ + target_stddev_ * m;
  for (auto& s : result.stddev) s = target_stddev_ * s;
  return result;
}

}  // namespace evostage::bo
