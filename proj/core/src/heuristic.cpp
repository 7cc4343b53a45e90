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

#include "evostage/heuristic.hpp"

#include <set>
#include <stdexcept>

namespace evostage {

void MultiStageHeuristic::validate() const {
  if (stages.empty()) {
    throw std::invalid_argument("heuristic '" + component_id + "' has no stages");
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].stage_index != static_cast<int>(i)) {
      throw std::invalid_argument("heuristic '" + component_id +
                                  "' stage indices must be 0..K-1 in order");
    }
    if (stages[i].source.empty()) {
      throw std::invalid_argument("heuristic '" + component_id + "' stage " +
                                  std::to_string(i) + " has empty source");
    }
  }
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kStagewiseDesign:
      return "stagewise_design";
    case OperatorKind::kGlobalExplore:
      return "global_explore";
    case OperatorKind::kGlobalEnhance:
      return "global_enhance";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  if (name == "stagewise_design") return OperatorKind::kStagewiseDesign;
  if (name == "global_explore") return OperatorKind::kGlobalExplore;
  if (name == "global_enhance") return OperatorKind::kGlobalEnhance;
  throw std::invalid_argument("unknown operator kind: " + std::string(name));
}

std::vector<std::string> AlgorithmIndividual::stage_sources(int stage_index) const {
  std::vector<std::string> sources;
  sources.reserve(components.size());
  for (const auto& component : components) {
    if (stage_index < 0 || stage_index >= component.stage_count()) {
      throw std::out_of_range("stage index " + std::to_string(stage_index) +
                              " out of range for component '" + component.component_id + "'");
    }
    sources.push_back(component.stages[static_cast<std::size_t>(stage_index)].source);
  }
  return sources;
}

AlgorithmIndividual assemble_algorithm(std::vector<MultiStageHeuristic> components) {
  if (components.empty()) {
    throw std::invalid_argument("cannot assemble an algorithm from zero components");
  }
  std::set<std::string> seen_ids;
  const int k = components.front().stage_count();
  for (const auto& component : components) {
    component.validate();
    if (component.stage_count() != k) {
      throw std::invalid_argument("stage-count mismatch: component '" + component.component_id +
                                  "' has " + std::to_string(component.stage_count()) +
                                  " stages, expected " + std::to_string(k));
    }
    if (!seen_ids.insert(component.component_id).second) {
      throw std::invalid_argument("duplicate component_id '" + component.component_id + "'");
    }
  }
  AlgorithmIndividual individual;
  individual.components = std::move(components);
  individual.legality = Legality::kUnevaluated;
  return individual;
}

}  // namespace evostage
