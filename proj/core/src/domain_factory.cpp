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

#include "evostage/domain_factory.hpp"

#include "evostage/errors.hpp"
#include "evostage/placement/instance.hpp"

namespace evostage {

std::unique_ptr<Domain> make_domain(const RunConfig& config) {
  if (config.domain_id == "schedule") {
    placement::ScheduleDomainConfig domain_config = config.schedule;
    domain_config.stage_count = config.stage_count;
    domain_config.sandbox = config.sandbox;
    placement::PlacementInstance instance =
        config.schedule_instance_path.empty()
            ? placement::reference_instance()
            : placement::load_instance(config.schedule_instance_path);
    return std::make_unique<placement::ScheduleDomain>(std::move(instance),
                                                       std::move(domain_config));
  }
  if (config.domain_id == "bo") {
    bo::BoDomainConfig domain_config = config.bo;
    domain_config.stage_count = config.stage_count;
    domain_config.sandbox = config.sandbox;
    domain_config.task_seed = config.seed;
    return std::make_unique<bo::BoDomain>(std::move(domain_config));
  }
  throw ConfigError("unknown domain '" + config.domain_id + "'");
}

}  // namespace evostage
