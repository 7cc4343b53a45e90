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

#include "evostage/bo/task.hpp"

#include <cmath>
#include <optional>

namespace evostage::bo {
namespace {

constexpr char kAcquisitionStarter[] = R"(import math


def utility_value(stage_index, iteration, best_f, mu, sigma):
    # Expected improvement for minimization.
    utilities = []
    for m, s in zip(mu, sigma):
        if s <= 0.0:
            utilities.append(max(best_f - m, 0.0))
            continue
        z = (best_f - m) / s
        cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
        pdf = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
        utilities.append((best_f - m) * cdf + s * pdf)
    return utilities
)";

TaskSpec build_spec(const BoDomainConfig& config, const BoProblem& problem) {
  TaskSpec spec;
  spec.domain_id = "bo";
  spec.stage_count = config.stage_count;
  spec.stage_units = stage_boundaries(config.total_samples, config.stage_count);

  ComponentSpec acquisition;
  acquisition.id = "acquisition";
  acquisition.signature = "def utility_value(stage_index, iteration, best_f, mu, sigma):";
  acquisition.description =
      "Scores every candidate point of a Bayesian-optimization pool. Inputs: the 0-based "
      "stage_index, the 0-based iteration (number of points observed so far), the incumbent "
      "minimum best_f on the standardized objective scale, and two equal-length lists mu and "
      "sigma with the Gaussian-process posterior mean and standard deviation per pool point. "
      "Return a list of utilities of the same length; the point with the largest utility is "
      "evaluated next. The objective is minimized.";
  acquisition.starter_source = kAcquisitionStarter;
  spec.components = {acquisition};

  spec.overview = "Design an acquisition function for Bayesian optimization of the " +
                  problem.name + " objective (minimization). The optimizer draws " +
                  std::to_string(config.init_count) + " initial quasi-random samples, then " +
                  "repeats fit-propose-evaluate until " + std::to_string(config.total_samples) +
                  " total samples are spent, split into " + std::to_string(config.stage_count) +
                  " stages. The run is scored by the optimal gap (best observed value minus "
                  "the known optimum); smaller is better.";
  return spec;
}

// One BO episode driven through the StagedTask interface.
class BoTask : public StagedTask {
 public:
  BoTask(const BoDomainConfig& config, const BoProblem& problem)
      : config_(config),
        state_(problem, stage_boundaries(config.total_samples, config.stage_count),
               config.init_count, config.task_seed) {}

  StageRecord begin() override {
    failure_.reset();
    return state_.initial_record();
  }

  bool alive() const override { return !failure_.has_value(); }

  StageRecord run_stage(int stage_index, const std::vector<std::string>& fragment_sources)
      override {
    if (failure_.has_value()) throw std::logic_error("run_stage called on a dead task");
    if (fragment_sources.size() != 1) {
      throw std::invalid_argument("bo task expects exactly one fragment source");
    }
    const int evals_before = state_.evaluations();
    std::unique_ptr<CandidateHandle> handle;
    try {
      handle = CandidateHandle::spawn(fragment_sources[0], "acquisition", config_.sandbox);
      StageRecord record = state_.run_stage(stage_index, sandbox_acquisition(*handle));
      handle->shutdown();
      return record;
    } catch (const CandidateFailure& candidate_failure) {
      failure_ = candidate_failure.verdict();
      StageRecord record;
      record.metrics["samples"] = state_.evaluations() - evals_before;
      record.metrics["evaluations_total"] = state_.evaluations();
      if (state_.evaluations() > 0) record.metrics["best_f"] = state_.best_observed();
      record.summary = "stage " + std::to_string(stage_index) +
                       " failed: " + std::string(to_string(failure_->tag)) + ": " + failure_->detail;
      return record;
    }
  }

  Outcome finalize() override {
    Outcome outcome;
    if (failure_.has_value()) {
      outcome.verdict = *failure_;
      outcome.score = 0.0;
    } else {
      outcome.verdict = LegalityVerdict{Legality::kPass, ""};
      outcome.score = -state_.optimal_gap();
      outcome.final_metrics["optimal_gap"] = state_.optimal_gap();
      outcome.final_metrics["best_f"] = state_.best_observed();
    }
    outcome.final_metrics["evaluations"] = state_.evaluations();
    return outcome;
  }

 private:
  BoDomainConfig config_;
  BoRunState state_;
  std::optional<LegalityVerdict> failure_;
};

}  // namespace

AcquisitionFn sandbox_acquisition(CandidateHandle& handle) {
  return [&handle](const AcquisitionContext& context) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& point : context.points) {
      points.push_back({{"mu", point.mu}, {"sigma", point.sigma}});
    }
    const nlohmann::json request = {{"op", "utility"},
                                    {"stage_index", context.stage_index},
                                    {"iteration", context.iteration},
                                    {"best_f", context.best_f},
                                    {"points", points}};
    const nlohmann::json response = handle.call(request);
    if (!response.contains("utility") || !response["utility"].is_array()) {
      throw CandidateFailure(
          LegalityVerdict{Legality::kRuntimeFailure, "response missing 'utility' array"});
    }
    std::vector<double> utilities;
    utilities.reserve(response["utility"].size());
    for (const auto& element : response["utility"]) {
      if (element.is_string()) {
        throw CandidateFailure(LegalityVerdict{
            Legality::kNonFinite, "candidate returned " + element.get<std::string>() +
                                      " in the utility array"});
      }
      if (!element.is_number()) {
        throw CandidateFailure(LegalityVerdict{
            Legality::kRuntimeFailure, "utility element is not numeric: " + element.dump()});
      }
      const double value = element.get<double>();
      if (!std::isfinite(value)) {
        throw CandidateFailure(
            LegalityVerdict{Legality::kNonFinite, "candidate returned a non-finite utility"});
      }
      utilities.push_back(value);
    }
    return utilities;
  };
}

BoDomain::BoDomain(BoDomainConfig config) : config_(std::move(config)) {
  if (!config_.benchmark_path.empty()) {
    problem_ = make_bo_problem(load_tabular(config_.benchmark_path));
  } else {
    problem_ = make_bo_problem(make_synthetic(config_.objective), config_.pool_size,
                               config_.task_seed);
  }
  spec_ = build_spec(config_, problem_);
}

std::unique_ptr<StagedTask> BoDomain::make_task(std::uint64_t /*episode_seed*/) {
  // Every evaluation uses the same task seed so scores are comparable across
  // the whole evolution (one seed per run configuration).
  return std::make_unique<BoTask>(config_, problem_);
}

}  // namespace evostage::bo
