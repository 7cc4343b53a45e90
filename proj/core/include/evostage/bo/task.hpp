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

#ifndef EVOSTAGE_BO_TASK_HPP_
#define EVOSTAGE_BO_TASK_HPP_

#include <memory>
#include <string>

#include "evostage/bo/run.hpp"
#include "evostage/sandbox.hpp"
#include "evostage/staged_task.hpp"

namespace evostage::bo {

struct BoDomainConfig {
  std::string objective = "ackley2d";  // synthetic name; ignored when benchmark_path set
  std::string benchmark_path;          // tabular benchmark file (optional)
  int total_samples = 15;
  int stage_count = 3;
  int init_count = 3;
  int pool_size = 2048;
  std::uint64_t task_seed = 0;  // governs pool + initial design
  SandboxConfig sandbox;
};

// Scores evolved acquisition functions: one component ("acquisition"), one
// BO episode per evaluation, score = -optimal_gap.
class BoDomain : public Domain {
 public:
  explicit BoDomain(BoDomainConfig config);

  const TaskSpec& task_spec() const override { return spec_; }
  std::unique_ptr<StagedTask> make_task(std::uint64_t episode_seed) override;

  const BoProblem& problem() const { return problem_; }

 private:
  BoDomainConfig config_;
  BoProblem problem_;
  TaskSpec spec_;
};

// Adapts a sandboxed candidate into an AcquisitionFn for one stage.
AcquisitionFn sandbox_acquisition(CandidateHandle& handle);

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_TASK_HPP_
