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

#include "evostage/evolution.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "evostage/errors.hpp"
#include "evostage/stagewise.hpp"

namespace evostage {
namespace {

constexpr std::uint64_t kEpisodeSeedSalt = 0x7461736bULL;

std::string make_individual_id(int reproduction_index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "cand-%04d", reproduction_index);
  return buffer;
}

}  // namespace

OperatorKind schedule_operator(int reproduction_index) {
  if (reproduction_index < 0) {
    throw std::invalid_argument("reproduction index must be >= 0");
  }
  switch (reproduction_index % 3) {
    case 0:
      return OperatorKind::kStagewiseDesign;
    case 1:
      return OperatorKind::kGlobalExplore;
    default:
      return OperatorKind::kGlobalEnhance;
  }
}

double RunReport::pass_rate() const {
  if (records.empty()) return 0.0;
  int passed = 0;
  for (const auto& record : records) {
    if (record.legality == Legality::kPass) ++passed;
  }
  return static_cast<double>(passed) / static_cast<double>(records.size());
}

std::map<std::string, int> RunReport::operator_counts() const {
  std::map<std::string, int> counts;
  counts[std::string(to_string(OperatorKind::kStagewiseDesign))] = 0;
  counts[std::string(to_string(OperatorKind::kGlobalExplore))] = 0;
  counts[std::string(to_string(OperatorKind::kGlobalEnhance))] = 0;
  for (const auto& record : records) {
    ++counts[std::string(to_string(record.scheduled_operator))];
  }
  return counts;
}

AlgorithmIndividual reproduce(OperatorKind kind, Population& population, Domain& domain,
                              Provider& provider, const ReproductionContext& context, Rng& rng,
                              bool* seeded_by_fallback) {
  if (seeded_by_fallback != nullptr) *seeded_by_fallback = false;
  const TaskSpec& spec = domain.task_spec();

  // The whole-heuristic operators need at least one reference; before any
  // individual has passed, fall back to StagewiseDesign so the population can
  // seed itself (the run log keeps the scheduled operator plus this flag).
  if (kind != OperatorKind::kStagewiseDesign && population.empty()) {
    if (!context.multi_stage_initialization) {
      throw ConfigError("population is empty and multi_stage_initialization is off; " +
                        std::string(to_string(kind)) + " has no references");
    }
    if (seeded_by_fallback != nullptr) *seeded_by_fallback = true;
    kind = OperatorKind::kStagewiseDesign;
  }

  const AgentSettings& settings = context.agents;
  auto lineage_of = [&](OperatorKind op, const std::vector<AlgorithmIndividual>& parents) {
    Lineage lineage;
    lineage.operator_kind = op;
    lineage.generation_index = context.generation_index;
    for (const auto& parent : parents) lineage.parent_ids.push_back(parent.id);
    return lineage;
  };

  std::unique_ptr<StagedTask> task = domain.make_task(context.episode_seed);
  switch (kind) {
    case OperatorKind::kStagewiseDesign: {
      AlgorithmIndividual offspring =
          run_stagewise_design(spec, *task, provider, settings, context.reproduction_index);
      offspring.lineage.generation_index = context.generation_index;
      return offspring;
    }
    case OperatorKind::kGlobalExplore: {
      std::vector<AlgorithmIndividual> references =
          population.select_parents(context.selection_count, rng);
      AlgorithmIndividual offspring;
      try {
        std::vector<MultiStageHeuristic> components =
            global_explore(provider, settings, spec, references, context.reproduction_index);
        offspring = evaluate_full(spec, *task, std::move(components));
      } catch (const CandidateFailure& failure) {
        offspring.legality = failure.verdict().tag;
        offspring.legality_detail = failure.verdict().detail;
      }
      offspring.lineage = lineage_of(OperatorKind::kGlobalExplore, references);
      return offspring;
    }
    case OperatorKind::kGlobalEnhance: {
      std::vector<AlgorithmIndividual> references = population.select_parents(1, rng);
      AlgorithmIndividual offspring;
      try {
        std::vector<MultiStageHeuristic> components = global_enhance(
            provider, settings, spec, references.front(), context.reproduction_index);
        offspring = evaluate_full(spec, *task, std::move(components));
      } catch (const CandidateFailure& failure) {
        offspring.legality = failure.verdict().tag;
        offspring.legality_detail = failure.verdict().detail;
      }
      offspring.lineage = lineage_of(OperatorKind::kGlobalEnhance, references);
      return offspring;
    }
  }
  throw std::logic_error("unreachable operator kind");
}

RunReport run_evolution(const RunConfig& config, Domain& domain, Provider& provider) {
  config.validate();

  RunReport report;
  report.config = config;

  Population population(config.population_size);
  Rng root(config.seed);

  ReproductionContext context;
  context.agents = config.agents;
  context.selection_count = config.selection_count;
  context.multi_stage_initialization = config.multi_stage_initialization;
  // One fixed episode per run so every offspring is scored on the same task.
  context.episode_seed = Rng::mix(config.seed ^ kEpisodeSeedSalt);

  std::optional<double> best_score;
  int reproduction_index = 0;

  for (int generation = 0; generation < config.generations; ++generation) {
    for (int j = 0; j < config.offspring_per_generation; ++j) {
      if (static_cast<int>(report.records.size()) >= config.budget_cap) return report;

      EvaluationRecord record;
      record.evaluation_index = static_cast<int>(report.records.size()) + 1;
      record.generation = generation;
      record.scheduled_operator = schedule_operator(reproduction_index);
      record.individual_id = make_individual_id(reproduction_index);

      Rng rng = root.fork(static_cast<std::uint64_t>(reproduction_index));
      context.generation_index = generation;
      context.reproduction_index = reproduction_index;
      const auto started = std::chrono::steady_clock::now();
      AlgorithmIndividual offspring;
      try {
        offspring = reproduce(record.scheduled_operator, population, domain, provider, context,
                              rng, &record.seeded_by_fallback);
      } catch (const ProviderError& error) {
        report.aborted = true;
        report.abort_reason = error.what();
        return report;
      } catch (const ConfigError&) {
        throw;
      } catch (const CandidateFailure& failure) {
        offspring.legality = failure.verdict().tag;
        offspring.legality_detail = failure.verdict().detail;
      } catch (const std::exception& error) {
        offspring.legality = Legality::kRuntimeFailure;
        offspring.legality_detail = error.what();
      }
      record.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();

      offspring.id = record.individual_id;
      record.legality = offspring.legality;
      record.legality_detail = offspring.legality_detail;
      record.score = offspring.score;

      if (offspring.legality == Legality::kPass && offspring.score.has_value()) {
        if (!best_score.has_value() || *offspring.score > *best_score) {
          best_score = offspring.score;
          report.best_individual = offspring;
        }
        population.update({offspring});
      }
      record.best_so_far = best_score;
      report.records.push_back(std::move(record));
      ++reproduction_index;
    }
  }
  return report;
}

}  // namespace evostage
