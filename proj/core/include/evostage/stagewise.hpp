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

#ifndef EVOSTAGE_STAGEWISE_HPP_
#define EVOSTAGE_STAGEWISE_HPP_

#include <vector>

#include "evostage/agents/provider.hpp"
#include "evostage/agents/roles.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/staged_task.hpp"

namespace evostage {

// Builds and evaluates one individual stage-by-stage: for each stage the
// coordinator reflects on the feedback so far and emits a goal, each coder
// writes its fragment against that goal, and the stage executes immediately.
// The loop stops at the first failing stage (execution failure) or failing
// agent; the returned individual carries whatever stage records and fragments
// were produced up to that point, the legality verdict, and on pass the score.
AlgorithmIndividual run_stagewise_design(const TaskSpec& spec, StagedTask& task,
                                         Provider& provider, const AgentSettings& settings,
                                         int generation_index);

// Evaluates an already-complete set of component heuristics (one per
// component slot, each with all K stages) against a fresh episode, with no
// agent involvement.  Used for offspring produced by the whole-heuristic
// operators.
AlgorithmIndividual evaluate_full(const TaskSpec& spec, StagedTask& task,
                                  std::vector<MultiStageHeuristic> components);

}  // namespace evostage

#endif  // EVOSTAGE_STAGEWISE_HPP_
