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

#ifndef EVOSTAGE_EVOLUTION_HPP_
#define EVOSTAGE_EVOLUTION_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evostage/agents/provider.hpp"
#include "evostage/config.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/population.hpp"
#include "evostage/staged_task.hpp"

namespace evostage {

// Cyclic 1:1:1 operator schedule over the reproduction index.
OperatorKind schedule_operator(int reproduction_index);

// One row of the run log: a single offspring evaluation.
struct EvaluationRecord {
  int evaluation_index = 0;  // 1-based position in the run
  int generation = 0;        // 0-based generation the offspring belongs to
  OperatorKind scheduled_operator = OperatorKind::kStagewiseDesign;
  // The scheduled operator needed references but the population was still
  // empty, so the offspring was produced by StagewiseDesign instead.
  bool seeded_by_fallback = false;
  Legality legality = Legality::kUnevaluated;
  std::string legality_detail;
  std::optional<double> score;         // engaged on Pass
  std::optional<double> best_so_far;   // best passing score up to this row
  std::string individual_id;
  // Wall time is informational only and excluded from canonical serialization.
  double wall_time_ms = 0.0;
};

struct RunReport {
  RunConfig config;
  std::vector<EvaluationRecord> records;
  std::optional<AlgorithmIndividual> best_individual;
  bool aborted = false;
  std::string abort_reason;

  double pass_rate() const;
  // Scheduled-operator tally, keyed by operator name.
  std::map<std::string, int> operator_counts() const;
};

// Runs the full generational loop: for each generation, reproduces
// offspring_per_generation individuals via the 1:1:1 operator cycle,
// evaluates each against a fresh episode, and folds passing offspring into
// the top-M population.  Halts early at budget_cap evaluations.  Provider
// failure aborts with a partial report; candidate failures are recorded and
// the run continues.
RunReport run_evolution(const RunConfig& config, Domain& domain, Provider& provider);

// Per-offspring settings reproduce() needs beyond the population and domain.
struct ReproductionContext {
  AgentSettings agents;
  int selection_count = 2;  // k references for Global-Explore
  bool multi_stage_initialization = true;
  int generation_index = 0;    // 0-based generation, recorded in lineage
  int reproduction_index = 0;  // run-unique ordinal, keys agent transcripts
  std::uint64_t episode_seed = 0;
};

// Produces and evaluates one offspring of the given kind.  Exposed for
// tests; run_evolution composes it with the schedule and budget logic.
// `seeded_by_fallback` (optional) reports whether an empty population forced
// a StagewiseDesign fallback for a reference-needing operator.
AlgorithmIndividual reproduce(OperatorKind kind, Population& population, Domain& domain,
                              Provider& provider, const ReproductionContext& context, Rng& rng,
                              bool* seeded_by_fallback);

}  // namespace evostage

#endif  // EVOSTAGE_EVOLUTION_HPP_
