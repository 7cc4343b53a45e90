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

#ifndef EVOSTAGE_STAGED_TASK_HPP_
#define EVOSTAGE_STAGED_TASK_HPP_

#include <memory>
#include <string>
#include <vector>

#include "evostage/heuristic.hpp"
#include "evostage/legality.hpp"

namespace evostage {

// Evenly splits `total_units` work units across `stage_count` stages.
// Each stage gets floor(total/stages); the remainder is distributed one unit
// each to the trailing stages, e.g. (10, 4) -> [2, 2, 3, 3].
std::vector<int> stage_boundaries(int total_units, int stage_count);

// One evolvable component of an algorithm: a named Python function whose body
// candidates must provide, described to the coder agents via `signature` and
// `description`.
struct ComponentSpec {
  std::string id;                // e.g. "learning_rate"
  std::string signature;         // full Python def line
  std::string description;       // natural-language contract
  std::string starter_source;    // baseline implementation used in prompts
};

// Static description of an evaluation task handed to the agents.
struct TaskSpec {
  std::string domain_id;                  // "schedule" or "bo"
  std::string overview;                   // task statement shown to agents
  int stage_count = 1;                    // K
  std::vector<ComponentSpec> components;  // evolvable pieces
  std::vector<int> stage_units;           // work units per stage
};

// A single evaluation episode that can be paused between stages.  The harness
// drives it as: begin(); for i in 0..K-1: run_stage(i, fragments) -> record;
// finalize() -> verdict + score.
class StagedTask {
 public:
  virtual ~StagedTask() = default;

  // Resets episode state and returns the pre-execution summary (I_0).
  virtual StageRecord begin() = 0;

  // False once a stage has failed; run_stage must not be called again.
  virtual bool alive() const = 0;

  // Executes stage `stage_index` using the per-component fragment sources for
  // that stage (parallel to TaskSpec::components).  Returns the intermediate
  // feedback I_{i+1}.  On failure the record's summary carries the reason and
  // the task is considered dead (finalize reports the failure verdict).
  virtual StageRecord run_stage(int stage_index,
                                const std::vector<std::string>& fragment_sources) = 0;

  // Ends the episode, returning the legality verdict and, on pass, the score.
  struct Outcome {
    LegalityVerdict verdict;
    double score = 0.0;
    std::map<std::string, double> final_metrics;
  };
  virtual Outcome finalize() = 0;
};

// Factory for evaluation episodes of one domain.
class Domain {
 public:
  virtual ~Domain() = default;
  virtual const TaskSpec& task_spec() const = 0;
  // Builds a fresh episode.  `episode_seed` controls any stochastic parts of
  // the evaluation; callers pass the same seed to make evaluations comparable.
  virtual std::unique_ptr<StagedTask> make_task(std::uint64_t episode_seed) = 0;
};

}  // namespace evostage

#endif  // EVOSTAGE_STAGED_TASK_HPP_
