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

#ifndef EVOSTAGE_BO_RUN_HPP_
#define EVOSTAGE_BO_RUN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evostage/bo/acquisition.hpp"
#include "evostage/bo/gp.hpp"
#include "evostage/bo/objectives.hpp"
#include "evostage/bo/tabular.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/legality.hpp"

namespace evostage::bo {

// A minimization problem expressed on the unit cube, with the candidate pool
// the acquisition function scores at every iteration.
struct BoProblem {
  std::string name;
  int dimension = 0;
  std::vector<std::vector<double>> pool;  // unit-cube points
  std::function<double(const std::vector<double>&)> evaluate_unit;
  double best_known = 0.0;
  // Tabular problems: the pool is the whole design space, so initial points
  // are drawn from it rather than from the continuum.
  bool pool_is_exhaustive = false;
};

// Continuous problem with a seeded uniform pool, drawn once per run.
BoProblem make_bo_problem(const SyntheticObjective& objective, int pool_size, std::uint64_t seed);
// Discrete problem whose pool is the full configuration table.
BoProblem make_bo_problem(const TabularBenchmark& benchmark);

// One Bayesian-optimization episode split into stages.  Stage i runs plan[i]
// samples; the first `init_count` samples of the run come from a seeded
// Halton design instead of the acquisition function.
class BoRunState {
 public:
  BoRunState(BoProblem problem, std::vector<int> plan, int init_count, std::uint64_t seed);

  // Executes one stage; throws CandidateFailure when the acquisition fails.
  StageRecord run_stage(int stage_index, const AcquisitionFn& acquisition);

  StageRecord initial_record() const;
  int evaluations() const { return static_cast<int>(values_.size()); }
  int total_samples() const { return total_samples_; }
  double best_observed() const;
  double optimal_gap() const { return best_observed() - problem_.best_known; }
  const std::vector<double>& best_curve() const { return best_curve_; }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  const BoProblem& problem() const { return problem_; }

 private:
  std::vector<double> next_initial_point();
  void observe(const std::vector<double>& unit_point, double value);

  BoProblem problem_;
  std::vector<int> plan_;
  int init_count_;
  int total_samples_;
  std::uint64_t halton_offset_;
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;
  std::vector<double> best_curve_;
  std::vector<std::size_t> initial_pool_indices_;  // exhaustive-pool init design
};

struct BoRunResult {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  std::vector<double> best_curve;
  std::vector<StageRecord> stage_records;
  double optimal_gap = 0.0;
  double score = 0.0;  // -optimal_gap when legal
  LegalityVerdict verdict;
};

// Runs every stage with one acquisition function.  Candidate failures abort
// the run and are recorded in the verdict.
BoRunResult bo_run(const BoProblem& problem, const AcquisitionFn& acquisition,
                   const std::vector<int>& plan, int init_count, std::uint64_t seed);

// Uniform-random baseline with the same budget; returns its optimal gap.
double random_search_gap(const BoProblem& problem, int total_samples, std::uint64_t seed);

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_RUN_HPP_
