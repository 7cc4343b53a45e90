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

#ifndef EVOSTAGE_PERSIST_HPP_
#define EVOSTAGE_PERSIST_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "evostage/config.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/population.hpp"

namespace evostage {

inline constexpr int kSchemaVersion = 1;

// Everything needed to resume or inspect an evolution's pool.
struct PersistedPopulation {
  RunConfig config;
  int generation_index = 0;
  std::vector<AlgorithmIndividual> entries;  // rank order, best first

  // Rebuilds a Population (entries re-inserted in rank order).
  Population to_population() const;
};

// Individual/heuristic JSON codecs (also used by run reports).
nlohmann::json individual_to_json(const AlgorithmIndividual& individual);
AlgorithmIndividual individual_from_json(const nlohmann::json& value);

// Lossless structural round-trip; save writes key-sorted JSON + newline.
void save_population(const Population& population, const RunConfig& config, int generation_index,
                     const std::string& path);
PersistedPopulation load_population(const std::string& path);

// Shared by every loader: parses text, mapping parse failures to ConfigError
// with the byte offset, and checks the embedded schema_version.
nlohmann::json parse_versioned_json(const std::string& text, const std::string& what);

}  // namespace evostage

#endif  // EVOSTAGE_PERSIST_HPP_
