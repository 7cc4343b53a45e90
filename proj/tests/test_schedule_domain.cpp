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

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "evostage/heuristic.hpp"
#include "evostage/legality.hpp"
#include "evostage/persist.hpp"
#include "evostage/placement/instance.hpp"
#include "evostage/placement/task.hpp"
#include "evostage/stagewise.hpp"

namespace {

using namespace evostage;
using namespace evostage::placement;

// Golden result of the baseline schedule (constant learning rate, 80 steps
// per subproblem) on the reference instance.  Frozen; any change to the
// numerical pipeline must be deliberate and re-freeze this value.
constexpr double kGoldenHpwl = 957.3169235110371;

std::string read_fixture(const std::string& name) {
  const std::string path = std::string(EVOSTAGE_REPO_ROOT) + "/fixtures/candidates/" + name;
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(file.good(), "missing fixture: " << path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::vector<MultiStageHeuristic> uniform_components(const TaskSpec& spec,
                                                    const std::string& lr_source,
                                                    const std::string& steps_source) {
  std::vector<MultiStageHeuristic> components;
  for (const auto& component : spec.components) {
    MultiStageHeuristic heuristic;
    heuristic.component_id = component.id;
    const std::string& source = component.id == "learning_rate" ? lr_source : steps_source;
    for (int stage = 0; stage < spec.stage_count; ++stage) {
      heuristic.stages.push_back(StageFragment{stage, source, ""});
    }
    components.push_back(std::move(heuristic));
  }
  return components;
}

AlgorithmIndividual run_baseline(ScheduleDomain& domain) {
  const TaskSpec& spec = domain.task_spec();
  auto task = domain.make_task(0);
  return evaluate_full(spec, *task,
                       uniform_components(spec, read_fixture("constant_lr.py"),
                                          read_fixture("fixed_steps80.py")));
}

}  // namespace

TEST_CASE("schedule_legality maps overflow and cap violations to TargetMissed") {
  CHECK(schedule_legality(900.0, 0.05, 0.1, 1e9).tag == Legality::kPass);
  CHECK(schedule_legality(900.0, 0.10, 0.1, 1e9).tag == Legality::kPass);  // boundary passes
  const LegalityVerdict overflow = schedule_legality(900.0, 0.2, 0.1, 1e9);
  CHECK(overflow.tag == Legality::kTargetMissed);
  CHECK(overflow.detail.find("overflow") != std::string::npos);
  const LegalityVerdict huge = schedule_legality(1e9, 0.05, 0.1, 1e9);
  CHECK(huge.tag == Legality::kTargetMissed);
  CHECK(huge.detail.find("cap") != std::string::npos);
  CHECK(schedule_legality(std::numeric_limits<double>::quiet_NaN(), 0.05, 0.1, 1e9).tag ==
        Legality::kTargetMissed);
}

TEST_CASE("the shipped instance file is exactly the built-in reference instance") {
  const PlacementInstance built_in = reference_instance();
  CHECK(built_in.cell_count() == 100);
  CHECK(built_in.bins_x == 8);
  CHECK(built_in.bins_y == 8);
  CHECK(built_in.target_overflow == doctest::Approx(0.1));
  CHECK_NOTHROW(built_in.validate());

  const std::string path = std::string(EVOSTAGE_REPO_ROOT) + "/data/micro100.instance";
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(file.good(), "missing " << path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  CHECK(buffer.str() == serialize_instance(built_in));
}

TEST_CASE("task spec exposes the two schedule components over four stages") {
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();
  CHECK(spec.domain_id == "schedule");
  CHECK(spec.stage_count == 4);
  CHECK(spec.stage_units == std::vector<int>{10, 10, 10, 10});
  REQUIRE(spec.components.size() == 2);
  CHECK(spec.components[0].id == "learning_rate");
  CHECK(spec.components[0].signature.find("adjust_learning_rate") != std::string::npos);
  CHECK_FALSE(spec.components[0].starter_source.empty());
  CHECK(spec.components[1].id == "steps");
  CHECK(spec.components[1].signature.find("num_steps") != std::string::npos);
  CHECK_FALSE(spec.components[1].starter_source.empty());
}

TEST_CASE("baseline schedule reaches the overflow target and the golden wirelength") {
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const AlgorithmIndividual individual = run_baseline(domain);

  CHECK(individual.legality == Legality::kPass);
  REQUIRE(individual.score.has_value());
  CHECK(individual.info.final_metrics.at("overflow") <= 0.1);
  // Exact equality: the trajectory is fully deterministic.
  CHECK(individual.info.final_metrics.at("hpwl") == kGoldenHpwl);
  CHECK(*individual.score == -kGoldenHpwl);
  CHECK(individual.info.final_metrics.at("steps_total") > 0);
  CHECK(individual.info.final_metrics.at("subproblems_run") > 0);
  REQUIRE_FALSE(individual.info.stage_records.empty());
  const StageRecord& first = individual.info.stage_records.front();
  CHECK(first.metrics.count("hpwl") == 1);
  CHECK(first.metrics.count("overflow") == 1);
  CHECK(first.metrics.count("steps") == 1);
  CHECK(first.metrics.count("lambda") == 1);
  CHECK(individual.info.initial_metrics.count("hpwl") == 1);
  CHECK(individual.info.initial_summary.find("initial placement") != std::string::npos);
}

TEST_CASE("repeat episodes are bit-identical") {
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const AlgorithmIndividual first = run_baseline(domain);
  const AlgorithmIndividual second = run_baseline(domain);
  CHECK(individual_to_json(first) == individual_to_json(second));
}

TEST_CASE("an already-satisfied target yields zero-step pass records") {
  PlacementInstance instance = reference_instance();
  instance.target_overflow = 10.0;  // satisfied after the very first subproblem
  ScheduleDomain domain(std::move(instance), ScheduleDomainConfig{});
  const AlgorithmIndividual individual = run_baseline(domain);

  CHECK(individual.legality == Legality::kPass);
  REQUIRE(individual.info.stage_records.size() == 4);
  // The run stops at the first end-of-subproblem check; stages 1..3 must not
  // execute any steps yet still produce records.
  CHECK(individual.info.stage_records[0].metrics.at("subproblems") == 1);
  for (std::size_t stage = 1; stage < 4; ++stage) {
    const StageRecord& record = individual.info.stage_records[stage];
    CHECK(record.metrics.at("steps") == 0);
    CHECK(record.metrics.at("subproblems") == 0);
    CHECK(record.summary.find("no steps taken") != std::string::npos);
  }
  CHECK(individual.info.final_metrics.at("subproblems_run") == 1);
}

TEST_CASE("a NaN learning rate mid-run maps to NonFinite with a partial record") {
  const std::string nan_at_step_7 =
      "def adjust_learning_rate(init_learning_rate, step_num, log_objective,\n"
      "                         log_objective_prev, overflow, log_lambda,\n"
      "                         learning_rate_prev, log_gradient_norm):\n"
      "    if step_num == 7:\n"
      "        return float('nan')\n"
      "    return init_learning_rate\n";
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();
  auto task = domain.make_task(0);
  const AlgorithmIndividual individual = evaluate_full(
      spec, *task,
      uniform_components(spec, nan_at_step_7, read_fixture("fixed_steps80.py")));

  CHECK(individual.legality == Legality::kNonFinite);
  CHECK_FALSE(individual.score.has_value());
  REQUIRE(individual.info.stage_records.size() == 1);  // later stages never ran
  const StageRecord& record = individual.info.stage_records.front();
  CHECK(record.metrics.at("steps") == 6);  // six updates landed before the NaN
  CHECK(record.summary.find("failed") != std::string::npos);
  CHECK(individual.info.final_metrics.count("hpwl") == 1);
}

TEST_CASE("non-positive learning rates are runtime failures") {
  const std::string negative_lr =
      "def adjust_learning_rate(init_learning_rate, step_num, log_objective,\n"
      "                         log_objective_prev, overflow, log_lambda,\n"
      "                         learning_rate_prev, log_gradient_norm):\n"
      "    return -1.0\n";
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();
  auto task = domain.make_task(0);
  const AlgorithmIndividual individual = evaluate_full(
      spec, *task, uniform_components(spec, negative_lr, read_fixture("fixed_steps80.py")));
  CHECK(individual.legality == Legality::kRuntimeFailure);
  CHECK(individual.legality_detail.find("non-positive") != std::string::npos);
}

TEST_CASE("a schedule that cannot spread the cells misses the target") {
  const std::string one_step = "def num_steps(subproblem_index, overflow, log_lambda):\n"
                               "    return 1\n";
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();
  auto task = domain.make_task(0);
  const AlgorithmIndividual individual =
      evaluate_full(spec, *task, uniform_components(spec, read_fixture("tiny_lr.py"), one_step));
  CHECK(individual.legality == Legality::kTargetMissed);
  CHECK_FALSE(individual.score.has_value());
  CHECK(individual.legality_detail.find("overflow") != std::string::npos);
  // All four stages ran to completion; the verdict comes from finalize.
  CHECK(individual.info.stage_records.size() == 4);
}

TEST_CASE("out-of-range step requests are clamped and counted") {
  PlacementInstance instance = reference_instance();
  instance.target_overflow = 10.0;  // stop after one subproblem: keep it fast
  ScheduleDomain domain(std::move(instance), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();

  SUBCASE("zero steps clamp up to one") {
    const std::string zero_steps = "def num_steps(subproblem_index, overflow, log_lambda):\n"
                                   "    return 0\n";
    auto task = domain.make_task(0);
    const AlgorithmIndividual individual = evaluate_full(
        spec, *task, uniform_components(spec, read_fixture("constant_lr.py"), zero_steps));
    CHECK(individual.legality == Legality::kPass);
    const StageRecord& record = individual.info.stage_records.front();
    CHECK(record.metrics.at("steps") == 1);
    CHECK(record.metrics.at("step_clamp_warnings") == 1);
  }

  SUBCASE("huge step requests clamp down to the cap") {
    const std::string huge_steps = "def num_steps(subproblem_index, overflow, log_lambda):\n"
                                   "    return 100000\n";
    auto task = domain.make_task(0);
    const AlgorithmIndividual individual = evaluate_full(
        spec, *task, uniform_components(spec, read_fixture("constant_lr.py"), huge_steps));
    CHECK(individual.legality == Legality::kPass);
    const StageRecord& record = individual.info.stage_records.front();
    CHECK(record.metrics.at("steps") == 100);  // default step cap
    CHECK(record.metrics.at("step_clamp_warnings") == 1);
  }
}

TEST_CASE("stage fragments can change behavior between stages") {
  // Stage 0 uses a tiny learning rate, later stages the constant baseline.
  // Each stage's candidate process pins its init_learning_rate to the rate in
  // effect when the stage starts, so the tiny stage-0 rate propagates: the
  // run executes all four stages but cannot clear the overflow target.
  ScheduleDomain domain(reference_instance(), ScheduleDomainConfig{});
  const TaskSpec& spec = domain.task_spec();

  std::vector<MultiStageHeuristic> components =
      uniform_components(spec, read_fixture("constant_lr.py"), read_fixture("fixed_steps80.py"));
  components[0].stages[0].source = read_fixture("tiny_lr.py");

  auto task = domain.make_task(0);
  const AlgorithmIndividual individual = evaluate_full(spec, *task, std::move(components));
  CHECK(individual.legality == Legality::kTargetMissed);
  CHECK_FALSE(individual.score.has_value());
  REQUIRE(individual.info.stage_records.size() == 4);
  // Stage 0 barely moves anything; overflow at its end is still near start.
  const double overflow_after_0 = individual.info.stage_records[0].metrics.at("overflow");
  CHECK(overflow_after_0 > 0.5);
  // The inherited tiny rate keeps the trajectory away from the baseline.
  CHECK(individual.info.final_metrics.at("hpwl") != kGoldenHpwl);
  CHECK(individual.info.final_metrics.at("overflow") > 0.1);
}
