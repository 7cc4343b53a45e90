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

#ifndef EVOSTAGE_CONFIG_HPP_
#define EVOSTAGE_CONFIG_HPP_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "evostage/agents/roles.hpp"
#include "evostage/bo/task.hpp"
#include "evostage/placement/task.hpp"
#include "evostage/sandbox.hpp"

namespace evostage {

// Fully resolved run settings.  Two named profiles supply the defaults:
//   "gp": schedule-design domain, M=5, G=5, 5 offspring/gen, k=2, K=4.
//   "bo": acquisition-design domain, M=3, G=3, 3 offspring/gen, k=2, K=3,
//         thoughts_of_code on.
// Explicit config keys override the profile defaults; budget_cap defaults to
// generations * offspring_per_generation when not given.
struct RunConfig {
  std::string profile = "gp";
  std::string domain_id = "schedule";  // "schedule" or "bo"
  int population_size = 5;             // M
  int generations = 5;                 // G
  int offspring_per_generation = 5;
  int selection_count = 2;             // k references for Global-Explore
  int stage_count = 4;                 // K
  std::uint64_t seed = 0;
  int budget_cap = 25;                 // max total evaluations
  bool multi_stage_initialization = true;
  AgentSettings agents;
  SandboxConfig sandbox;
  // Domain knobs; only the block matching domain_id is consulted.
  placement::ScheduleDomainConfig schedule;
  std::string schedule_instance_path;  // empty selects the built-in instance
  bo::BoDomainConfig bo;

  // Throws ConfigError on any invariant violation.
  void validate() const;
};

// Profile defaults with no file applied.  Unknown profile -> ConfigError.
RunConfig default_config(const std::string& profile);

// Parses a JSON config body.  `profile_override` (from the CLI) wins over the
// file's "profile" key; both default to "gp".  Empty/whitespace-only text is
// an empty config.  Unknown keys and invariant violations -> ConfigError.
RunConfig parse_config(const std::string& json_text, const std::string& profile_override = "");

// parse_config over a file's contents.  Missing file -> ConfigError.
RunConfig load_config(const std::string& path, const std::string& profile_override = "");

// Full key-sorted echo of a config; parse_config(dump) round-trips it.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace evostage

#endif  // EVOSTAGE_CONFIG_HPP_
