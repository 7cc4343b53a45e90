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

#include "evostage/config.hpp"

#include <fstream>
#include <sstream>

#include "evostage/errors.hpp"

namespace evostage {
namespace {

using nlohmann::json;

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

template <typename T>
T as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void RunConfig::validate() const {
  require(profile == "gp" || profile == "bo", "unknown profile '" + profile + "'");
  require(domain_id == "schedule" || domain_id == "bo",
          "domain must be 'schedule' or 'bo', got '" + domain_id + "'");
  require(population_size >= 1, "population_size must be >= 1");
  require(generations >= 0, "generations must be >= 0");
  require(offspring_per_generation >= 1, "offspring_per_generation must be >= 1");
  require(selection_count >= 1, "selection_count must be >= 1");
  require(stage_count >= 1, "stage_count must be >= 1");
  require(budget_cap >= 0, "budget_cap must be >= 0");
  require(agents.coder_temperature >= 0.0 && agents.coder_temperature <= 2.0,
          "coder_temperature must be in [0, 2]");
  require(agents.coordinator_temperature >= 0.0 && agents.coordinator_temperature <= 2.0,
          "coordinator_temperature must be in [0, 2]");
  require(agents.max_retries >= 0, "max_retries must be >= 0");
  require(!agents.model.empty(), "model must be non-empty");
  require(!sandbox.runtime_command.empty(), "sandbox_python must be non-empty");
  require(sandbox.call_timeout_ms >= 1, "sandbox_call_timeout_ms must be >= 1");
  require(sandbox.startup_timeout_ms >= 1, "sandbox_startup_timeout_ms must be >= 1");
  if (domain_id == "schedule") {
    require(schedule.subproblem_count >= stage_count,
            "schedule_subproblem_count must be >= stage_count");
    require(schedule.step_cap >= 1, "schedule_step_cap must be >= 1");
    require(schedule.lambda_growth > 0.0, "schedule_lambda_growth must be > 0");
    require(schedule.gamma_bin_multiple > 0.0, "schedule_gamma_bin_multiple must be > 0");
    require(schedule.gamma_anneal > 0.0 && schedule.gamma_anneal <= 1.0,
            "schedule_gamma_anneal must be in (0, 1]");
    require(schedule.initial_learning_rate > 0.0,
            "schedule_initial_learning_rate must be > 0");
    require(schedule.objective_cap > 0.0, "schedule_objective_cap must be > 0");
  } else {
    require(bo.total_samples >= stage_count, "bo_total_samples must be >= stage_count");
    require(bo.init_count >= 1, "bo_init_count must be >= 1");
    require(bo.init_count <= bo.total_samples, "bo_init_count must be <= bo_total_samples");
    require(bo.pool_size >= 1, "bo_pool_size must be >= 1");
    require(!bo.objective.empty() || !bo.benchmark_path.empty(),
            "bo_objective or bo_benchmark_path must be set");
  }
}

RunConfig default_config(const std::string& profile) {
  RunConfig config;
  if (profile == "gp") {
    config.profile = "gp";
    config.domain_id = "schedule";
    config.population_size = 5;
    config.generations = 5;
    config.offspring_per_generation = 5;
    config.selection_count = 2;
    config.stage_count = 4;
    config.budget_cap = 25;
    config.agents.thoughts_of_code = false;
  } else if (profile == "bo") {
    config.profile = "bo";
    config.domain_id = "bo";
    config.population_size = 3;
    config.generations = 3;
    config.offspring_per_generation = 3;
    config.selection_count = 2;
    config.stage_count = 3;
    config.budget_cap = 9;
    config.agents.thoughts_of_code = true;
  } else {
    throw ConfigError("unknown profile '" + profile + "'");
  }
  return config;
}

RunConfig parse_config(const std::string& json_text, const std::string& profile_override) {
  json file = json::object();
  const bool blank = json_text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (!blank) {
    try {
      file = json::parse(json_text);
    } catch (const json::parse_error& error) {
      throw ConfigError("config parse error at byte " + std::to_string(error.byte) + ": " +
                        error.what());
    }
    if (!file.is_object()) throw ConfigError("config root must be an object");
  }

  std::string profile = "gp";
  if (file.contains("profile")) profile = as<std::string>(file["profile"], "profile");
  if (!profile_override.empty()) profile = profile_override;

  RunConfig config = default_config(profile);
  bool budget_given = false;

  for (const auto& [key, value] : file.items()) {
    if (key == "profile") {
      // already consumed
    } else if (key == "domain") {
      config.domain_id = as<std::string>(value, key);
    } else if (key == "population_size") {
      config.population_size = as<int>(value, key);
    } else if (key == "generations") {
      config.generations = as<int>(value, key);
    } else if (key == "offspring_per_generation") {
      config.offspring_per_generation = as<int>(value, key);
    } else if (key == "selection_count") {
      config.selection_count = as<int>(value, key);
    } else if (key == "stage_count") {
      config.stage_count = as<int>(value, key);
    } else if (key == "seed") {
      config.seed = as<std::uint64_t>(value, key);
    } else if (key == "budget_cap") {
      config.budget_cap = as<int>(value, key);
      budget_given = true;
    } else if (key == "multi_stage_initialization") {
      config.multi_stage_initialization = as<bool>(value, key);
    } else if (key == "thoughts_of_code") {
      config.agents.thoughts_of_code = as<bool>(value, key);
    } else if (key == "coder_temperature") {
      config.agents.coder_temperature = as<double>(value, key);
    } else if (key == "coordinator_temperature") {
      config.agents.coordinator_temperature = as<double>(value, key);
    } else if (key == "model") {
      config.agents.model = as<std::string>(value, key);
    } else if (key == "max_retries") {
      config.agents.max_retries = as<int>(value, key);
    } else if (key == "sandbox_python") {
      if (value.is_string()) {
        config.sandbox.runtime_command = {as<std::string>(value, key)};
      } else {
        config.sandbox.runtime_command = as<std::vector<std::string>>(value, key);
      }
    } else if (key == "sandbox_call_timeout_ms") {
      config.sandbox.call_timeout_ms = as<int>(value, key);
    } else if (key == "sandbox_startup_timeout_ms") {
      config.sandbox.startup_timeout_ms = as<int>(value, key);
    } else if (key == "sandbox_work_dir") {
      config.sandbox.work_dir = as<std::string>(value, key);
    } else if (key == "schedule_instance_path") {
      config.schedule_instance_path = as<std::string>(value, key);
    } else if (key == "schedule_subproblem_count") {
      config.schedule.subproblem_count = as<int>(value, key);
    } else if (key == "schedule_step_cap") {
      config.schedule.step_cap = as<int>(value, key);
    } else if (key == "schedule_lambda_growth") {
      config.schedule.lambda_growth = as<double>(value, key);
    } else if (key == "schedule_gamma_bin_multiple") {
      config.schedule.gamma_bin_multiple = as<double>(value, key);
    } else if (key == "schedule_gamma_anneal") {
      config.schedule.gamma_anneal = as<double>(value, key);
    } else if (key == "schedule_initial_learning_rate") {
      config.schedule.initial_learning_rate = as<double>(value, key);
    } else if (key == "schedule_objective_cap") {
      config.schedule.objective_cap = as<double>(value, key);
    } else if (key == "bo_objective") {
      config.bo.objective = as<std::string>(value, key);
    } else if (key == "bo_benchmark_path") {
      config.bo.benchmark_path = as<std::string>(value, key);
    } else if (key == "bo_total_samples") {
      config.bo.total_samples = as<int>(value, key);
    } else if (key == "bo_init_count") {
      config.bo.init_count = as<int>(value, key);
    } else if (key == "bo_pool_size") {
      config.bo.pool_size = as<int>(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (!budget_given) {
    config.budget_cap = config.generations * config.offspring_per_generation;
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path, const std::string& profile_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), profile_override);
}

nlohmann::json config_to_json(const RunConfig& config) {
  json out;
  out["profile"] = config.profile;
  out["domain"] = config.domain_id;
  out["population_size"] = config.population_size;
  out["generations"] = config.generations;
  out["offspring_per_generation"] = config.offspring_per_generation;
  out["selection_count"] = config.selection_count;
  out["stage_count"] = config.stage_count;
  out["seed"] = config.seed;
  out["budget_cap"] = config.budget_cap;
  out["multi_stage_initialization"] = config.multi_stage_initialization;
  out["thoughts_of_code"] = config.agents.thoughts_of_code;
  out["coder_temperature"] = config.agents.coder_temperature;
  out["coordinator_temperature"] = config.agents.coordinator_temperature;
  out["model"] = config.agents.model;
  out["max_retries"] = config.agents.max_retries;
  out["sandbox_python"] = config.sandbox.runtime_command;
  out["sandbox_call_timeout_ms"] = config.sandbox.call_timeout_ms;
  out["sandbox_startup_timeout_ms"] = config.sandbox.startup_timeout_ms;
  out["sandbox_work_dir"] = config.sandbox.work_dir;
  if (config.domain_id == "schedule") {
    out["schedule_instance_path"] = config.schedule_instance_path;
    out["schedule_subproblem_count"] = config.schedule.subproblem_count;
    out["schedule_step_cap"] = config.schedule.step_cap;
    out["schedule_lambda_growth"] = config.schedule.lambda_growth;
    out["schedule_gamma_bin_multiple"] = config.schedule.gamma_bin_multiple;
    out["schedule_gamma_anneal"] = config.schedule.gamma_anneal;
    out["schedule_initial_learning_rate"] = config.schedule.initial_learning_rate;
    out["schedule_objective_cap"] = config.schedule.objective_cap;
  } else {
    out["bo_objective"] = config.bo.objective;
    out["bo_benchmark_path"] = config.bo.benchmark_path;
    out["bo_total_samples"] = config.bo.total_samples;
    out["bo_init_count"] = config.bo.init_count;
    out["bo_pool_size"] = config.bo.pool_size;
  }
  return out;
}

}  // namespace evostage
