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

#ifndef EVOSTAGE_AGENTS_ROLES_HPP_
#define EVOSTAGE_AGENTS_ROLES_HPP_

#include <string>
#include <vector>

#include "evostage/agents/provider.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/staged_task.hpp"

namespace evostage {

struct AgentSettings {
  std::string model = "gpt-4o";
  double coder_temperature = 0.2;
  double coordinator_temperature = 0.7;
  bool thoughts_of_code = false;
  int max_retries = 2;  // extra attempts when the output cannot be parsed
};

struct StageGoal {
  int stage_index = 0;
  std::string goal_text;
  std::string reflection_text;
};

struct CodeArtifact {
  std::string source;
  std::string raw_response;
  std::string thought;  // populated only when thoughts_of_code is enabled
};

// Asks the coordinator for the stage goal, reflecting on I_0..I_{i-1}.
// Malformed/empty output after retries surfaces as CandidateFailure with an
// IllegalCode verdict; transport problems propagate as ProviderError.
StageGoal coordinator_reflect(Provider& provider, const AgentSettings& settings,
                              const TaskSpec& task, const StageRecord& initial_record,
                              const std::vector<StageRecord>& stage_history, int stage_index,
                              int generation_index);

// Asks one coder for the stage fragment of its component, given the goal and
// the component's own earlier fragments.
CodeArtifact coder_generate(Provider& provider, const AgentSettings& settings,
                            const TaskSpec& task, const ComponentSpec& component,
                            const StageGoal& goal, const std::vector<StageFragment>& prior_stages,
                            int generation_index);

// Whole-heuristic operators: one call per coder returning all K stages as K
// fenced blocks in stage order.
std::vector<MultiStageHeuristic> global_explore(Provider& provider,
                                                const AgentSettings& settings,
                                                const TaskSpec& task,
                                                const std::vector<AlgorithmIndividual>& references,
                                                int generation_index);
std::vector<MultiStageHeuristic> global_enhance(Provider& provider,
                                                const AgentSettings& settings,
                                                const TaskSpec& task,
                                                const AlgorithmIndividual& reference,
                                                int generation_index);

// Prompt-facing serializations (exposed for tests).
std::string describe_history(const StageRecord& initial_record,
                             const std::vector<StageRecord>& stage_history);
std::string describe_reference(const AlgorithmIndividual& individual,
                               const std::string& component_id);

}  // namespace evostage

#endif  // EVOSTAGE_AGENTS_ROLES_HPP_
