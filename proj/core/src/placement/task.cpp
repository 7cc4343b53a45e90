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

#include "evostage/placement/task.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "evostage/placement/adam.hpp"
#include "evostage/placement/numerics.hpp"

namespace evostage::placement {
namespace {

constexpr std::uint64_t kReferenceInstanceSeed = 9271015;

constexpr char kLearningRateStarter[] = R"(def adjust_learning_rate(init_learning_rate, step_num, log_objective,
                         log_objective_prev, overflow, log_lambda,
                         learning_rate_prev, log_gradient_norm):
    # Constant schedule: keep the initial learning rate.
    return init_learning_rate
)";

constexpr char kStepsStarter[] = R"(def num_steps(subproblem_index, overflow, log_lambda):
    # Fixed budget per subproblem.
    return 80
)";

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double guarded_log(double v) { return std::log(std::max(v, 1e-300)); }

double gradient_norm(const std::vector<double>& gradient) {
  double sum = 0.0;
  for (double g : gradient) sum += g * g;
  return std::sqrt(sum);
}

TaskSpec build_spec(const PlacementInstance& instance, const ScheduleDomainConfig& config) {
  TaskSpec spec;
  spec.domain_id = "schedule";
  spec.stage_count = config.stage_count;
  spec.stage_units = stage_boundaries(config.subproblem_count, config.stage_count);

  ComponentSpec learning_rate;
  learning_rate.id = "learning_rate";
  learning_rate.signature =
      "def adjust_learning_rate(init_learning_rate, step_num, log_objective, "
      "log_objective_prev, overflow, log_lambda, learning_rate_prev, log_gradient_norm):";
  learning_rate.description =
      "Returns the Adam learning rate for one optimization step. step_num counts all steps of "
      "the run starting at 1; log_objective and log_objective_prev are the logs of the current "
      "and previous penalized objective; overflow is the current density overflow; log_lambda "
      "is the log of the density weight; learning_rate_prev is the rate used on the previous "
      "step (the configured initial rate before step 1); log_gradient_norm is the log of the "
      "current gradient norm. Must return a positive float.";
  learning_rate.starter_source = kLearningRateStarter;

  ComponentSpec steps;
  steps.id = "steps";
  steps.signature = "def num_steps(subproblem_index, overflow, log_lambda):";
  steps.description =
      "Returns the number of Adam steps to spend on one penalty subproblem (an integer, "
      "clamped to [1, " +
      std::to_string(config.step_cap) +
      "]). subproblem_index counts subproblems from 0; overflow is the current density "
      "overflow; log_lambda is the log of the density weight.";
  steps.starter_source = kStepsStarter;

  spec.components = {learning_rate, steps};

  char overview[1024];
  std::snprintf(overview, sizeof(overview),
                "Design learning-rate and step schedules for an Adam-based analytic placer at "
                "desk scale. The placer spreads %d cells (%d nets) over a %dx%d bin grid by "
                "minimizing smoothed wirelength plus lambda times a quadratic density penalty, "
                "solving %d subproblems with lambda growing %.2fx per subproblem (%d stages of "
                "subproblems). The run stops early once density overflow reaches the target "
                "%.2f and is scored by the final half-perimeter wirelength (lower is better); "
                "a run that misses the overflow target is illegal.",
                instance.cell_count(), static_cast<int>(instance.nets.size()), instance.bins_x,
                instance.bins_y, config.subproblem_count, config.lambda_growth,
                config.stage_count, instance.target_overflow);
  spec.overview = overview;
  return spec;
}

// One schedule-design episode: Adam over penalty subproblems, with the two
// candidate processes queried for step counts and learning rates.
class ScheduleTask : public StagedTask {
 public:
  ScheduleTask(const PlacementInstance& instance, const ScheduleDomainConfig& config)
      : instance_(instance), config_(config) {}

  StageRecord begin() override {
    positions_ = initial_positions(instance_);
    adam_.emplace(positions_.size());
    gamma_ = config_.gamma_bin_multiple * instance_.bin_width();
    global_step_ = 0;
    subproblem_ = 0;
    stopped_ = false;
    failure_.reset();
    learning_rate_prev_ = config_.initial_learning_rate;
    log_objective_prev_ = 0.0;
    have_prev_objective_ = false;

    // Calibrate lambda_0 so wirelength and penalty gradients start balanced.
    const SmoothWlResult wl = smooth_wl(instance_, positions_, gamma_);
    const DensityResult density = density_overflow(instance_, positions_);
    const double wl_norm = gradient_norm(wl.gradient);
    const double penalty_norm = gradient_norm(density.gradient);
    lambda_ = penalty_norm > 0.0 ? wl_norm / penalty_norm : 1.0;

    const double start_hpwl = hpwl(instance_, positions_);
    StageRecord record;
    record.metrics["hpwl"] = start_hpwl;
    record.metrics["smooth_wl"] = wl.value;
    record.metrics["overflow"] = density.overflow;
    record.metrics["lambda"] = lambda_;
    record.metrics["gamma"] = gamma_;
    record.metrics["cells"] = instance_.cell_count();
    record.metrics["nets"] = static_cast<double>(instance_.nets.size());
    record.summary = "initial placement: hpwl " + format_metric(start_hpwl) + ", overflow " +
                     format_metric(density.overflow) + " (target " +
                     format_metric(instance_.target_overflow) + "), lambda_0 " +
                     format_metric(lambda_);
    return record;
  }

  bool alive() const override { return !failure_.has_value(); }

  StageRecord run_stage(int stage_index, const std::vector<std::string>& fragment_sources)
      override {
    if (failure_.has_value()) throw std::logic_error("run_stage called on a dead task");
    if (fragment_sources.size() != 2) {
      throw std::invalid_argument("schedule task expects learning_rate and steps fragments");
    }
    const std::vector<int> plan =
        stage_boundaries(config_.subproblem_count, config_.stage_count);
    if (stage_index < 0 || stage_index >= static_cast<int>(plan.size())) {
      throw std::invalid_argument("stage index out of range");
    }

    const double hpwl_start = hpwl(instance_, positions_);
    const double overflow_start = density_overflow(instance_, positions_).overflow;

    if (stopped_) {
      StageRecord record;
      record.metrics["hpwl"] = hpwl_start;
      record.metrics["overflow"] = overflow_start;
      record.metrics["steps"] = 0;
      record.metrics["subproblems"] = 0;
      record.metrics["lambda"] = lambda_;
      record.summary = "stage " + std::to_string(stage_index) +
                       ": target overflow already reached, no steps taken";
      return record;
    }

    int steps_in_stage = 0;
    int subproblems_in_stage = 0;
    int clamp_warnings = 0;
    double log_grad_norm_sum = 0.0;
    double smooth_wl_last = 0.0;

    std::unique_ptr<CandidateHandle> lr_handle;
    std::unique_ptr<CandidateHandle> steps_handle;
    try {
      lr_handle =
          CandidateHandle::spawn(fragment_sources[0], "learning_rate", config_.sandbox);
      steps_handle = CandidateHandle::spawn(fragment_sources[1], "steps", config_.sandbox);

      const int budget = plan[static_cast<std::size_t>(stage_index)];
      for (int unit = 0; unit < budget && !stopped_; ++unit) {
        double overflow_now = density_overflow(instance_, positions_).overflow;
        const nlohmann::json steps_response =
            steps_handle->call({{"op", "steps"},
                                {"subproblem_index", subproblem_},
                                {"overflow", overflow_now},
                                {"log_lambda", std::log(lambda_)}});
        long steps = require_integer(steps_response, "steps");
        if (steps < 1 || steps > config_.step_cap) {
          steps = std::clamp<long>(steps, 1, config_.step_cap);
          ++clamp_warnings;
        }

        for (long step = 0; step < steps; ++step) {
          const ObjectiveResult objective =
              penalized_objective(instance_, positions_, gamma_, lambda_);
          const double log_objective = guarded_log(objective.value);
          if (!have_prev_objective_) {
            log_objective_prev_ = log_objective;
            have_prev_objective_ = true;
          }
          const double grad_norm = gradient_norm(objective.gradient);
          const nlohmann::json lr_response =
              lr_handle->call({{"op", "learning_rate"},
                               {"step_num", global_step_ + 1},
                               {"log_objective", log_objective},
                               {"log_objective_prev", log_objective_prev_},
                               {"overflow", objective.overflow},
                               {"log_lambda", std::log(lambda_)},
                               {"learning_rate_prev", learning_rate_prev_},
                               {"log_gradient_norm", guarded_log(grad_norm)}});
          const double learning_rate = require_finite_number(lr_response, "learning_rate");
          if (!(learning_rate > 0.0)) {
            throw CandidateFailure(LegalityVerdict{
                Legality::kRuntimeFailure,
                "candidate returned non-positive learning_rate " + format_metric(learning_rate)});
          }
          adam_step(*adam_, positions_, objective.gradient, learning_rate);
          clamp_positions();
          learning_rate_prev_ = learning_rate;
          log_objective_prev_ = log_objective;
          ++global_step_;
          ++steps_in_stage;
          log_grad_norm_sum += guarded_log(grad_norm);
          smooth_wl_last = objective.smooth_wl;
        }
        ++subproblems_in_stage;
        ++subproblem_;  // completed, so it counts even when we stop below

        overflow_now = density_overflow(instance_, positions_).overflow;
        if (overflow_now <= instance_.target_overflow) {
          stopped_ = true;
          break;
        }
        lambda_ *= config_.lambda_growth;
        gamma_ *= config_.gamma_anneal;
      }
      lr_handle->shutdown();
      steps_handle->shutdown();
    } catch (const CandidateFailure& candidate_failure) {
      failure_ = candidate_failure.verdict();
      StageRecord record;
      record.metrics["hpwl"] = hpwl(instance_, positions_);
      record.metrics["overflow"] = density_overflow(instance_, positions_).overflow;
      record.metrics["steps"] = steps_in_stage;
      record.metrics["subproblems"] = subproblems_in_stage;
      record.metrics["lambda"] = lambda_;
      record.summary = "stage " + std::to_string(stage_index) +
                       " failed: " + std::string(to_string(failure_->tag)) + ": " + failure_->detail;
      return record;
    }

    const double hpwl_end = hpwl(instance_, positions_);
    const double overflow_end = density_overflow(instance_, positions_).overflow;
    StageRecord record;
    record.metrics["hpwl"] = hpwl_end;
    record.metrics["smooth_wl"] = smooth_wl_last;
    record.metrics["overflow"] = overflow_end;
    record.metrics["delta_hpwl"] = hpwl_end - hpwl_start;
    record.metrics["delta_overflow"] = overflow_end - overflow_start;
    record.metrics["mean_log_gradient_norm"] =
        steps_in_stage > 0 ? log_grad_norm_sum / steps_in_stage : 0.0;
    record.metrics["steps"] = steps_in_stage;
    record.metrics["subproblems"] = subproblems_in_stage;
    record.metrics["lambda"] = lambda_;
    if (clamp_warnings > 0) record.metrics["step_clamp_warnings"] = clamp_warnings;
    record.summary = "stage " + std::to_string(stage_index) + ": overflow " +
                     format_metric(overflow_start) + " -> " + format_metric(overflow_end) +
                     ", hpwl " + format_metric(hpwl_start) + " -> " + format_metric(hpwl_end) +
                     ", " + std::to_string(steps_in_stage) + " steps over " +
                     std::to_string(subproblems_in_stage) + " subproblems" +
                     (stopped_ ? " (target reached)" : "");
    return record;
  }

  Outcome finalize() override {
    Outcome outcome;
    const double final_hpwl = hpwl(instance_, positions_);
    const double final_overflow = density_overflow(instance_, positions_).overflow;
    outcome.final_metrics["hpwl"] = final_hpwl;
    outcome.final_metrics["overflow"] = final_overflow;
    outcome.final_metrics["steps_total"] = global_step_;
    outcome.final_metrics["subproblems_run"] = subproblem_;
    if (failure_.has_value()) {
      outcome.verdict = *failure_;
      outcome.score = 0.0;
      return outcome;
    }
    outcome.verdict = schedule_legality(final_hpwl, final_overflow, instance_.target_overflow,
                                        config_.objective_cap);
    outcome.score = outcome.verdict.passed() ? -final_hpwl : 0.0;
    return outcome;
  }

 private:
  void clamp_positions() {
    const int n = instance_.cell_count();
    for (int i = 0; i < n; ++i) {
      positions_[static_cast<std::size_t>(i)] = std::clamp(
          positions_[static_cast<std::size_t>(i)], instance_.layout_min_x, instance_.layout_max_x);
      positions_[static_cast<std::size_t>(n + i)] =
          std::clamp(positions_[static_cast<std::size_t>(n + i)], instance_.layout_min_y,
                     instance_.layout_max_y);
    }
  }

  PlacementInstance instance_;
  ScheduleDomainConfig config_;
  std::vector<double> positions_;
  std::optional<AdamState> adam_;
  double gamma_ = 1.0;
  double lambda_ = 1.0;
  int global_step_ = 0;
  int subproblem_ = 0;
  bool stopped_ = false;
  double learning_rate_prev_ = 1.0;
  double log_objective_prev_ = 0.0;
  bool have_prev_objective_ = false;
  std::optional<LegalityVerdict> failure_;
};

}  // namespace

LegalityVerdict schedule_legality(double final_hpwl, double final_overflow,
                                  double target_overflow, double objective_cap) {
  if (final_overflow > target_overflow) {
    return LegalityVerdict{Legality::kTargetMissed,
                           "final overflow " + format_metric(final_overflow) +
                               " exceeds target " + format_metric(target_overflow)};
  }
  if (!(final_hpwl < objective_cap)) {
    return LegalityVerdict{Legality::kTargetMissed,
                           "final hpwl " + format_metric(final_hpwl) + " is not below the cap " +
                               format_metric(objective_cap)};
  }
  return LegalityVerdict{Legality::kPass, ""};
}

PlacementInstance reference_instance() {
  return make_random_instance(kReferenceInstanceSeed, 100, 60, 8, 64.0);
}

ScheduleDomain::ScheduleDomain(PlacementInstance instance, ScheduleDomainConfig config)
    : instance_(std::move(instance)), config_(std::move(config)) {
  instance_.validate();
  if (config_.subproblem_count < config_.stage_count) {
    throw ConfigError("subproblem_count must be >= stage_count");
  }
  spec_ = build_spec(instance_, config_);
}

std::unique_ptr<StagedTask> ScheduleDomain::make_task(std::uint64_t /*episode_seed*/) {
  return std::make_unique<ScheduleTask>(instance_, config_);
}

}  // namespace evostage::placement
