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

#ifndef EVOSTAGE_PLACEMENT_TASK_HPP_
#define EVOSTAGE_PLACEMENT_TASK_HPP_

#include <memory>
#include <string>

#include "evostage/legality.hpp"
#include "evostage/placement/instance.hpp"
#include "evostage/sandbox.hpp"
#include "evostage/staged_task.hpp"

namespace evostage::placement {

struct ScheduleDomainConfig {
  int subproblem_count = 40;       // S, grouped into stage_count stages
  int stage_count = 4;             // K
  int step_cap = 100;              // per-subproblem Adam step ceiling
  double lambda_growth = 1.1;      // lambda_{s+1} = growth * lambda_s
  double gamma_bin_multiple = 4.0; // gamma_0 = multiple * bin width
  double gamma_anneal = 0.98;      // gamma_{s+1} = anneal * gamma_s
  double initial_learning_rate = 4.0;  // learning_rate_prev seen by step 1
  double objective_cap = 1e9;      // HPWL legality ceiling
  SandboxConfig sandbox;
};

// Pass iff overflow <= target and hpwl < cap; otherwise TargetMissed.
LegalityVerdict schedule_legality(double final_hpwl, double final_overflow,
                                  double target_overflow, double objective_cap);

// The reference 100-cell instance, shipped as data/micro100.instance.
PlacementInstance reference_instance();

// Scores evolved learning-rate and step schedules by running Adam over a
// sequence of penalty subproblems; score = -final HPWL when legal.
class ScheduleDomain : public Domain {
 public:
  ScheduleDomain(PlacementInstance instance, ScheduleDomainConfig config);

  const TaskSpec& task_spec() const override { return spec_; }
  // Episodes are deterministic per instance (its position_seed fixes the
  // starting placement); episode_seed is accepted for interface parity.
  std::unique_ptr<StagedTask> make_task(std::uint64_t episode_seed) override;

  const PlacementInstance& instance() const { return instance_; }

 private:
  PlacementInstance instance_;
  ScheduleDomainConfig config_;
  TaskSpec spec_;
};

}  // namespace evostage::placement

#endif  // EVOSTAGE_PLACEMENT_TASK_HPP_
