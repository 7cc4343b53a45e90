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

#include "evostage/persist.hpp"

#include <fstream>
#include <sstream>

#include "evostage/errors.hpp"

namespace evostage {
namespace {

using nlohmann::json;

json fragment_to_json(const StageFragment& fragment) {
  return json{{"stage_index", fragment.stage_index},
              {"source", fragment.source},
              {"goal_text", fragment.goal_text}};
}

StageFragment fragment_from_json(const json& value) {
  StageFragment fragment;
  fragment.stage_index = value.at("stage_index").get<int>();
  fragment.source = value.at("source").get<std::string>();
  fragment.goal_text = value.at("goal_text").get<std::string>();
  return fragment;
}

json heuristic_to_json(const MultiStageHeuristic& heuristic) {
  json stages = json::array();
  for (const auto& fragment : heuristic.stages) stages.push_back(fragment_to_json(fragment));
  return json{{"component_id", heuristic.component_id},
              {"stages", std::move(stages)},
              {"description", heuristic.description}};
}

MultiStageHeuristic heuristic_from_json(const json& value) {
  MultiStageHeuristic heuristic;
  heuristic.component_id = value.at("component_id").get<std::string>();
  for (const auto& fragment : value.at("stages")) {
    heuristic.stages.push_back(fragment_from_json(fragment));
  }
  heuristic.description = value.at("description").get<std::string>();
  return heuristic;
}

json record_to_json(const StageRecord& record) {
  return json{{"metrics", record.metrics}, {"summary", record.summary}};
}

StageRecord record_from_json(const json& value) {
  StageRecord record;
  record.metrics = value.at("metrics").get<std::map<std::string, double>>();
  record.summary = value.at("summary").get<std::string>();
  return record;
}

json info_to_json(const ExecutionInfo& info) {
  json stage_records = json::array();
  for (const auto& record : info.stage_records) stage_records.push_back(record_to_json(record));
  return json{{"initial_summary", info.initial_summary},
              {"initial_metrics", info.initial_metrics},
              {"stage_records", std::move(stage_records)},
              {"final_metrics", info.final_metrics}};
}

ExecutionInfo info_from_json(const json& value) {
  ExecutionInfo info;
  info.initial_summary = value.at("initial_summary").get<std::string>();
  info.initial_metrics = value.at("initial_metrics").get<std::map<std::string, double>>();
  for (const auto& record : value.at("stage_records")) {
    info.stage_records.push_back(record_from_json(record));
  }
  info.final_metrics = value.at("final_metrics").get<std::map<std::string, double>>();
  return info;
}

json lineage_to_json(const Lineage& lineage) {
  json out{{"parent_ids", lineage.parent_ids},
           {"generation_index", lineage.generation_index}};
  if (lineage.operator_kind.has_value()) {
    out["operator"] = std::string(to_string(*lineage.operator_kind));
  } else {
    out["operator"] = nullptr;
  }
  return out;
}

Lineage lineage_from_json(const json& value) {
  Lineage lineage;
  if (!value.at("operator").is_null()) {
    lineage.operator_kind = operator_kind_from_string(value.at("operator").get<std::string>());
  }
  lineage.parent_ids = value.at("parent_ids").get<std::vector<std::string>>();
  lineage.generation_index = value.at("generation_index").get<int>();
  return lineage;
}

}  // namespace

json individual_to_json(const AlgorithmIndividual& individual) {
  json components = json::array();
  for (const auto& component : individual.components) {
    components.push_back(heuristic_to_json(component));
  }
  json out{{"id", individual.id},
           {"components", std::move(components)},
           {"legality", std::string(to_string(individual.legality))},
           {"legality_detail", individual.legality_detail},
           {"info", info_to_json(individual.info)},
           {"lineage", lineage_to_json(individual.lineage)}};
  if (individual.score.has_value()) {
    out["score"] = *individual.score;
  } else {
    out["score"] = nullptr;
  }
  return out;
}

AlgorithmIndividual individual_from_json(const json& value) {
  AlgorithmIndividual individual;
  individual.id = value.at("id").get<std::string>();
  for (const auto& component : value.at("components")) {
    individual.components.push_back(heuristic_from_json(component));
  }
  if (!value.at("score").is_null()) individual.score = value.at("score").get<double>();
  individual.legality = legality_from_string(value.at("legality").get<std::string>());
  individual.legality_detail = value.at("legality_detail").get<std::string>();
  individual.info = info_from_json(value.at("info"));
  individual.lineage = lineage_from_json(value.at("lineage"));
  return individual;
}

Population PersistedPopulation::to_population() const {
  Population population(config.population_size);
  population.update(entries);
  return population;
}

nlohmann::json parse_versioned_json(const std::string& text, const std::string& what) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ConfigError(what + " parse error at byte " + std::to_string(error.byte) + ": " +
                      error.what());
  }
  if (!value.is_object() || !value.contains("schema_version")) {
    throw ConfigError(what + " is missing schema_version");
  }
  const int version = value["schema_version"].get<int>();
  if (version != kSchemaVersion) {
    throw ConfigError(what + " has schema_version " + std::to_string(version) +
                      "; this build reads version " + std::to_string(kSchemaVersion));
  }
  return value;
}

void save_population(const Population& population, const RunConfig& config, int generation_index,
                     const std::string& path) {
  json entries = json::array();
  for (const auto& individual : population.snapshot()) {
    entries.push_back(individual_to_json(individual));
  }
  const json out{{"schema_version", kSchemaVersion},
                 {"config", config_to_json(config)},
                 {"generation_index", generation_index},
                 {"entries", std::move(entries)}};
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write population file '" + path + "'");
  file << out.dump(2) << '\n';
}

PersistedPopulation load_population(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read population file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const json value = parse_versioned_json(buffer.str(), "population file");

  PersistedPopulation persisted;
  persisted.config = parse_config(value.at("config").dump());
  persisted.generation_index = value.at("generation_index").get<int>();
  for (const auto& entry : value.at("entries")) {
    persisted.entries.push_back(individual_from_json(entry));
  }
  return persisted;
}

}  // namespace evostage
