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

#include "evostage/stagewise.hpp"

#include <stdexcept>
#include <utility>

#include "evostage/errors.hpp"

namespace evostage {
namespace {

void record_outcome(AlgorithmIndividual& individual, StagedTask& task) {
  StagedTask::Outcome outcome = task.finalize();
  individual.legality = outcome.verdict.tag;
  individual.legality_detail = outcome.verdict.detail;
  individual.info.final_metrics = outcome.final_metrics;
  if (outcome.verdict.passed()) individual.score = outcome.score;
}

}  // namespace

AlgorithmIndividual run_stagewise_design(const TaskSpec& spec, StagedTask& task,
                                         Provider& provider, const AgentSettings& settings,
                                         int generation_index) {
  AlgorithmIndividual individual;
  individual.lineage.operator_kind = OperatorKind::kStagewiseDesign;
  individual.lineage.generation_index = generation_index;
  individual.components.reserve(spec.components.size());
  for (const auto& component : spec.components) {
    MultiStageHeuristic heuristic;
    heuristic.component_id = component.id;
    individual.components.push_back(std::move(heuristic));
  }

  const StageRecord initial = task.begin();
  individual.info.initial_summary = initial.summary;
  individual.info.initial_metrics = initial.metrics;

  for (int stage = 0; stage < spec.stage_count; ++stage) {
    StageGoal goal;
    std::vector<std::string> sources(spec.components.size());
    try {
      goal = coordinator_reflect(provider, settings, spec, initial,
                                 individual.info.stage_records, stage, generation_index);
      for (std::size_t c = 0; c < spec.components.size(); ++c) {
        CodeArtifact artifact =
            coder_generate(provider, settings, spec, spec.components[c], goal,
                           individual.components[c].stages, generation_index);
        sources[c] = artifact.source;
        if (settings.thoughts_of_code && !artifact.thought.empty()) {
          auto& description = individual.components[c].description;
          if (!description.empty()) description += "\n";
          description += artifact.thought;
        }
      }
    } catch (const CandidateFailure& failure) {
      // An agent failed before the stage could execute: no record for this
      // stage, and the episode never reaches finalize.
      individual.legality = failure.verdict().tag;
      individual.legality_detail = failure.verdict().detail;
      return individual;
    }

    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      StageFragment fragment;
      fragment.stage_index = stage;
      fragment.source = sources[c];
      fragment.goal_text = goal.goal_text;
      individual.components[c].stages.push_back(std::move(fragment));
    }

    StageRecord record = task.run_stage(stage, sources);
    individual.info.stage_records.push_back(std::move(record));
    if (!task.alive()) break;
  }

  record_outcome(individual, task);
  return individual;
}

AlgorithmIndividual evaluate_full(const TaskSpec& spec, StagedTask& task,
                                  std::vector<MultiStageHeuristic> components) {
  if (components.size() != spec.components.size()) {
    throw std::invalid_argument("evaluate_full: component-count mismatch");
  }
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (components[c].stage_count() != spec.stage_count) {
      throw std::invalid_argument("evaluate_full: heuristic '" + components[c].component_id +
                                  "' has " + std::to_string(components[c].stage_count()) +
                                  " stages, task needs " + std::to_string(spec.stage_count));
    }
  }

  AlgorithmIndividual individual;
  individual.components = std::move(components);

  const StageRecord initial = task.begin();
  individual.info.initial_summary = initial.summary;
  individual.info.initial_metrics = initial.metrics;

  for (int stage = 0; stage < spec.stage_count; ++stage) {
    StageRecord record = task.run_stage(stage, individual.stage_sources(stage));
    individual.info.stage_records.push_back(std::move(record));
    if (!task.alive()) break;
  }

  record_outcome(individual, task);
  return individual;
}

}  // namespace evostage
