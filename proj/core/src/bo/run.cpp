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

#include "evostage/bo/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "evostage/errors.hpp"
#include "evostage/rng.hpp"

namespace evostage::bo {
namespace {

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13};

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

BoProblem make_bo_problem(const SyntheticObjective& objective, int pool_size, std::uint64_t seed) {
  if (pool_size < 1) throw std::invalid_argument("pool_size must be >= 1");
  BoProblem problem;
  problem.name = objective.name;
  problem.dimension = objective.dimension();
  problem.best_known = objective.optimum_value;
  problem.pool_is_exhaustive = false;
  Rng pool_rng(Rng::mix(seed ^ 0x706f6f6cULL));  // "pool"
  problem.pool.reserve(static_cast<std::size_t>(pool_size));
  for (int i = 0; i < pool_size; ++i) {
    std::vector<double> point(static_cast<std::size_t>(problem.dimension));
    for (auto& coordinate : point) coordinate = pool_rng.uniform01();
    problem.pool.push_back(std::move(point));
  }
  problem.evaluate_unit = [objective](const std::vector<double>& unit_point) {
    return objective.evaluate_unit(unit_point);
  };
  return problem;
}

BoProblem make_bo_problem(const TabularBenchmark& benchmark) {
  BoProblem problem;
  problem.name = "tabular";
  problem.dimension = static_cast<int>(benchmark.parameter_names.size());
  problem.best_known = benchmark.best_value;
  problem.pool_is_exhaustive = true;

  // Normalize each parameter column to [0, 1] over the table's own range.
  std::vector<double> lo(benchmark.parameter_names.size());
  std::vector<double> hi(benchmark.parameter_names.size());
  for (std::size_t c = 0; c < benchmark.parameter_names.size(); ++c) {
    lo[c] = hi[c] = benchmark.parameters.front()[c];
    for (const auto& row : benchmark.parameters) {
      lo[c] = std::min(lo[c], row[c]);
      hi[c] = std::max(hi[c], row[c]);
    }
  }
  problem.pool.reserve(benchmark.parameters.size());
  for (const auto& row : benchmark.parameters) {
    std::vector<double> point(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      point[c] = hi[c] > lo[c] ? (row[c] - lo[c]) / (hi[c] - lo[c]) : 0.5;
    }
    problem.pool.push_back(std::move(point));
  }
  // Resolve a query by exact pool identity; bo_run only proposes pool points.
  auto pool_copy = problem.pool;
  auto objectives = benchmark.objectives;
  problem.evaluate_unit = [pool_copy, objectives](const std::vector<double>& unit_point) {
    for (std::size_t i = 0; i < pool_copy.size(); ++i) {
      if (pool_copy[i] == unit_point) return objectives[i];
    }
    throw DomainError("tabular query is not a table configuration");
  };
  return problem;
}

BoRunState::BoRunState(BoProblem problem, std::vector<int> plan, int init_count,
                       std::uint64_t seed)
    : problem_(std::move(problem)), plan_(std::move(plan)), init_count_(init_count) {
  if (plan_.empty()) throw std::invalid_argument("stage plan must not be empty");
  total_samples_ = std::accumulate(plan_.begin(), plan_.end(), 0);
  if (init_count_ < 1 || init_count_ > total_samples_) {
    throw std::invalid_argument("init_count must be in [1, total_samples]");
  }
  if (problem_.dimension < 1 ||
      problem_.dimension > static_cast<int>(std::size(kHaltonBases))) {
    throw std::invalid_argument("unsupported problem dimension");
  }
  halton_offset_ = 1 + (Rng::mix(seed ^ 0x696e6974ULL) % 1024);  // "init"

  if (problem_.pool_is_exhaustive) {
    // Draw distinct pool rows for the initial design via a seeded shuffle.
    std::vector<std::size_t> order(problem_.pool.size());
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(Rng::mix(seed ^ 0x73687566ULL));  // "shuf"
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<int>(i) - 1));
      std::swap(order[i - 1], order[j]);
    }
    const std::size_t take =
        std::min<std::size_t>(static_cast<std::size_t>(init_count_), order.size());
    initial_pool_indices_.assign(order.begin(), order.begin() + static_cast<long>(take));
  }
}

std::vector<double> BoRunState::next_initial_point() {
  const auto drawn = static_cast<std::size_t>(evaluations());
  if (problem_.pool_is_exhaustive) {
    return problem_.pool[initial_pool_indices_[drawn % initial_pool_indices_.size()]];
  }
  std::vector<double> point(static_cast<std::size_t>(problem_.dimension));
  for (int d = 0; d < problem_.dimension; ++d) {
    point[static_cast<std::size_t>(d)] =
        halton(halton_offset_ + drawn, kHaltonBases[d]);
  }
  return point;
}

void BoRunState::observe(const std::vector<double>& unit_point, double value) {
  points_.push_back(unit_point);
  values_.push_back(value);
  const double best = best_curve_.empty() ? value : std::min(best_curve_.back(), value);
  best_curve_.push_back(best);
}

double BoRunState::best_observed() const {
  if (values_.empty()) throw std::logic_error("no observations yet");
  return best_curve_.back();
}

StageRecord BoRunState::initial_record() const {
  StageRecord record;
  record.metrics["total_samples"] = total_samples_;
  record.metrics["init_count"] = init_count_;
  record.metrics["pool_size"] = static_cast<double>(problem_.pool.size());
  record.metrics["dimension"] = problem_.dimension;
  record.summary = "minimize " + problem_.name + " with " + std::to_string(total_samples_) +
                   " samples (" + std::to_string(init_count_) + " initial) over " +
                   std::to_string(plan_.size()) + " stages";
  return record;
}

StageRecord BoRunState::run_stage(int stage_index, const AcquisitionFn& acquisition) {
  if (stage_index < 0 || stage_index >= static_cast<int>(plan_.size())) {
    throw std::invalid_argument("stage index out of range");
  }
  const double best_at_start =
      values_.empty() ? std::numeric_limits<double>::quiet_NaN() : best_observed();
  const int budget = plan_[static_cast<std::size_t>(stage_index)];

  for (int sample = 0; sample < budget; ++sample) {
    if (evaluations() < init_count_) {
      const std::vector<double> point = next_initial_point();
      observe(point, problem_.evaluate_unit(point));
      continue;
    }
    const GPModel model = GPModel::fit(points_, values_);
    const Posterior posterior = model.posterior_standardized(problem_.pool);

    AcquisitionContext context;
    context.stage_index = stage_index;
    context.iteration = evaluations();
    context.best_f = model.standardize(best_observed());
    context.points.reserve(problem_.pool.size());
    for (std::size_t i = 0; i < problem_.pool.size(); ++i) {
      context.points.push_back(PoolPoint{posterior.mean[i], posterior.stddev[i]});
    }

    const std::vector<double> utilities = acquisition(context);
    if (utilities.size() != problem_.pool.size()) {
      throw CandidateFailure(LegalityVerdict{
          Legality::kRuntimeFailure,
          "acquisition returned " + std::to_string(utilities.size()) + " utilities for " +
              std::to_string(problem_.pool.size()) + " points"});
    }
    for (double u : utilities) {
      if (!std::isfinite(u)) {
        throw CandidateFailure(
            LegalityVerdict{Legality::kNonFinite, "acquisition produced a non-finite utility"});
      }
    }
    const std::size_t chosen = argmax_utility(utilities);
    observe(problem_.pool[chosen], problem_.evaluate_unit(problem_.pool[chosen]));
  }

  // Posterior spread over the pool after this stage, for the stage record.
  const GPModel model = GPModel::fit(points_, values_);
  const Posterior posterior = model.posterior_standardized(problem_.pool);
  double mean_sigma = 0.0;
  for (double s : posterior.stddev) mean_sigma += s;
  mean_sigma /= static_cast<double>(posterior.stddev.size());

  StageRecord record;
  const double best_now = best_observed();
  const double improvement = std::isnan(best_at_start) ? 0.0 : best_at_start - best_now;
  record.metrics["best_f"] = best_now;
  record.metrics["improvement"] = improvement;
  record.metrics["samples"] = budget;
  record.metrics["mean_pool_sigma"] = mean_sigma;
  record.metrics["evaluations_total"] = evaluations();
  record.summary = "stage " + std::to_string(stage_index) + ": sampled " +
                   std::to_string(budget) + " points, best " + format_metric(best_now) +
                   " (improved " + format_metric(improvement) + "), mean posterior sigma " +
                   format_metric(mean_sigma);
  return record;
}

BoRunResult bo_run(const BoProblem& problem, const AcquisitionFn& acquisition,
                   const std::vector<int>& plan, int init_count, std::uint64_t seed) {
  BoRunState state(problem, plan, init_count, seed);
  BoRunResult result;
  try {
    for (int stage = 0; stage < static_cast<int>(plan.size()); ++stage) {
      result.stage_records.push_back(state.run_stage(stage, acquisition));
    }
    result.verdict = LegalityVerdict{Legality::kPass, ""};
    result.optimal_gap = state.optimal_gap();
    result.score = -result.optimal_gap;
  } catch (const CandidateFailure& failure) {
    result.verdict = failure.verdict();
    result.optimal_gap = std::numeric_limits<double>::quiet_NaN();
    result.score = 0.0;
  }
  result.points = state.points();
  result.values = state.values();
  result.best_curve = state.best_curve();
  return result;
}

double random_search_gap(const BoProblem& problem, int total_samples, std::uint64_t seed) {
  Rng rng(Rng::mix(seed ^ 0x72616e64ULL));  // "rand"
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < total_samples; ++i) {
    std::vector<double> point(static_cast<std::size_t>(problem.dimension));
    if (problem.pool_is_exhaustive) {
      point = problem.pool[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(problem.pool.size()) - 1))];
    } else {
      for (auto& coordinate : point) coordinate = rng.uniform01();
    }
    best = std::min(best, problem.evaluate_unit(point));
  }
  return best - problem.best_known;
}

}  // namespace evostage::bo
