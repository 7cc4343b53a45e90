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

#ifndef EVOSTAGE_DOMAIN_FACTORY_HPP_
#define EVOSTAGE_DOMAIN_FACTORY_HPP_

#include <memory>

#include "evostage/config.hpp"
#include "evostage/staged_task.hpp"

namespace evostage {

// Builds the evaluation domain named by config.domain_id, propagating the
// run's stage count, seed, and sandbox settings into the domain knobs.
// Throws DomainError when domain assets (instance file, benchmark table)
// cannot be loaded.
std::unique_ptr<Domain> make_domain(const RunConfig& config);

}  // namespace evostage

#endif  // EVOSTAGE_DOMAIN_FACTORY_HPP_
