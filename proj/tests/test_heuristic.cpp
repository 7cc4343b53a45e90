#include <doctest.h>

#include <stdexcept>

#include "evostage/heuristic.hpp"
#include "evostage/legality.hpp"

using namespace evostage;

namespace {

MultiStageHeuristic make_heuristic(const std::string& id, int stages) {
  MultiStageHeuristic heuristic;
  heuristic.component_id = id;
  for (int i = 0; i < stages; ++i) {
    heuristic.stages.push_back({i, "def f():\n    return " + std::to_string(i) + "\n", "goal"});
  }
  return heuristic;
}

}  // namespace

TEST_CASE("validate accepts a well-formed heuristic") {
  CHECK_NOTHROW(make_heuristic("lr", 4).validate());
}

TEST_CASE("validate rejects gaps, duplicates, and empty sources") {
  MultiStageHeuristic gap = make_heuristic("lr", 3);
  gap.stages[1].stage_index = 5;
  CHECK_THROWS_AS(gap.validate(), std::invalid_argument);

  MultiStageHeuristic dup = make_heuristic("lr", 3);
  dup.stages[2].stage_index = 0;
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  MultiStageHeuristic empty = make_heuristic("lr", 3);
  empty.stages[1].source.clear();
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("assemble_algorithm combines one heuristic per slot") {
  AlgorithmIndividual individual =
      assemble_algorithm({make_heuristic("learning_rate", 4), make_heuristic("steps", 4)});
  CHECK(individual.components.size() == 2);
  CHECK(individual.stage_count() == 4);
  CHECK(individual.legality == Legality::kUnevaluated);
  CHECK_FALSE(individual.score.has_value());

  const auto sources = individual.stage_sources(2);
  REQUIRE(sources.size() == 2);
  CHECK(sources[0] == individual.components[0].stages[2].source);
}

TEST_CASE("assemble_algorithm rejects mismatched stage counts and duplicate ids") {
  CHECK_THROWS_WITH_AS(
      assemble_algorithm({make_heuristic("a", 4), make_heuristic("b", 3)}),
      doctest::Contains("stage-count mismatch"), std::invalid_argument);
  CHECK_THROWS_AS(assemble_algorithm({make_heuristic("a", 4), make_heuristic("a", 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_algorithm({}), std::invalid_argument);
}

TEST_CASE("operator kind round-trips through its names") {
  for (OperatorKind kind : {OperatorKind::kStagewiseDesign, OperatorKind::kGlobalExplore,
                            OperatorKind::kGlobalEnhance}) {
    CHECK(operator_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(operator_kind_from_string("mutate"), std::invalid_argument);
}

TEST_CASE("legality round-trips through its names") {
  for (Legality tag : {Legality::kUnevaluated, Legality::kPass, Legality::kIllegalCode,
                       Legality::kRuntimeFailure, Legality::kTimeout, Legality::kNonFinite,
                       Legality::kTargetMissed}) {
    CHECK(legality_from_string(to_string(tag)) == tag);
  }
}

TEST_CASE("pass_rate counts Pass verdicts") {
  std::vector<LegalityVerdict> verdicts{{Legality::kPass, ""},
                                        {Legality::kPass, ""},
                                        {Legality::kIllegalCode, "syntax"},
                                        {Legality::kPass, ""},
                                        {Legality::kPass, ""}};
  const PassRate rate = pass_rate(verdicts);
  CHECK(rate.value == doctest::Approx(0.8));
  CHECK_FALSE(rate.empty_input);

  const PassRate empty = pass_rate({});
  CHECK(empty.value == 0.0);
  CHECK(empty.empty_input);
}
