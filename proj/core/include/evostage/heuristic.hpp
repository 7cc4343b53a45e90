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

#ifndef EVOSTAGE_HEURISTIC_HPP_
#define EVOSTAGE_HEURISTIC_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evostage/legality.hpp"

namespace evostage {

// One stage slice of an algorithm component: the candidate source that is
// live while the run is inside this stage, plus the goal it was written for.
struct StageFragment {
  int stage_index = 0;
  std::string source;
  std::string goal_text;
};

// An algorithm component expressed as K ordered stage fragments.
struct MultiStageHeuristic {
  std::string component_id;
  std::vector<StageFragment> stages;
  // Optional natural-language "thought" describing the design idea; only
  // populated when the run is configured to evolve such descriptions.
  std::string description;

  int stage_count() const { return static_cast<int>(stages.size()); }

  // Throws std::invalid_argument unless stages are exactly 0..K-1 with
  // non-empty sources.
  void validate() const;
};

// Feedback from executing one stage: named finite metrics plus a prose
// summary the coordinator can reason about.
struct StageRecord {
  std::map<std::string, double> metrics;
  std::string summary;
};

// The full execution feedback for one evaluated individual: the initial task
// record, one record per completed stage, and end-of-run metrics.
struct ExecutionInfo {
  std::string initial_summary;
  std::map<std::string, double> initial_metrics;
  std::vector<StageRecord> stage_records;
  std::map<std::string, double> final_metrics;
};

enum class OperatorKind {
  kStagewiseDesign,
  kGlobalExplore,
  kGlobalEnhance,
};

std::string_view to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

struct Lineage {
  std::optional<OperatorKind> operator_kind;
  std::vector<std::string> parent_ids;
  int generation_index = 0;
};

// N component heuristics assembled into one evaluable algorithm.
struct AlgorithmIndividual {
  std::string id;
  std::vector<MultiStageHeuristic> components;
  // Engaged exactly when legality == kPass.
  std::optional<double> score;
  Legality legality = Legality::kUnevaluated;
  std::string legality_detail;
  ExecutionInfo info;
  Lineage lineage;

  int stage_count() const {
    return components.empty() ? 0 : components.front().stage_count();
  }
  // Sources of the fragments live at `stage_index`, one per component.
  std::vector<std::string> stage_sources(int stage_index) const;
};

// Combines one heuristic per component slot into an unscored individual.
// Throws std::invalid_argument on stage-count mismatch or duplicate
// component ids.
AlgorithmIndividual assemble_algorithm(std::vector<MultiStageHeuristic> components);

}  // namespace evostage

#endif  // EVOSTAGE_HEURISTIC_HPP_
