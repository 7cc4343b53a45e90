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
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "evostage/errors.hpp"
#include "evostage/legality.hpp"
#include "evostage/sandbox.hpp"

namespace {

using evostage::CandidateFailure;
using evostage::CandidateHandle;
using evostage::ConfigError;
using evostage::Legality;
using evostage::LegalityVerdict;
using evostage::pass_rate;
using evostage::require_finite_number;
using evostage::require_integer;
using evostage::SandboxConfig;

std::string read_fixture(const std::string& name) {
  const std::string path = std::string(EVOSTAGE_REPO_ROOT) + "/fixtures/candidates/" + name;
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(file.good(), "missing fixture: " << path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

nlohmann::json lr_request(double learning_rate_prev) {
  return {{"op", "learning_rate"}, {"step_num", 1},          {"log_objective", 2.5},
          {"log_objective_prev", 2.5}, {"overflow", 0.4},    {"log_lambda", 0.0},
          {"learning_rate_prev", learning_rate_prev}, {"log_gradient_norm", 1.0}};
}

Legality spawn_verdict(const std::string& fixture, const std::string& component,
                       const SandboxConfig& config) {
  try {
    auto handle = CandidateHandle::spawn(read_fixture(fixture), component, config);
    handle->shutdown();
    return Legality::kPass;
  } catch (const CandidateFailure& failure) {
    return failure.verdict().tag;
  }
}

}  // namespace

TEST_CASE("legal candidate answers learning_rate calls over the line protocol") {
  SandboxConfig config;
  auto handle =
      CandidateHandle::spawn(read_fixture("constant_lr.py"), "learning_rate", config);
  REQUIRE(handle->ready());
  CHECK(handle->component_id() == "learning_rate");
  CHECK(CandidateHandle::live_process_count() == 1);

  // The host pins init_learning_rate to the first call's learning_rate_prev.
  const nlohmann::json first = handle->call(lr_request(4.0));
  CHECK(require_finite_number(first, "learning_rate") == doctest::Approx(4.0));
  const nlohmann::json second = handle->call(lr_request(123.0));
  CHECK(require_finite_number(second, "learning_rate") == doctest::Approx(4.0));

  handle->shutdown();
  CHECK(CandidateHandle::live_process_count() == 0);
}

TEST_CASE("steps candidate returns integers") {
  SandboxConfig config;
  auto handle = CandidateHandle::spawn(read_fixture("fixed_steps80.py"), "steps", config);
  const nlohmann::json response = handle->call(
      {{"op", "steps"}, {"subproblem_index", 0}, {"overflow", 0.9}, {"log_lambda", 0.0}});
  CHECK(require_integer(response, "steps") == 80);
  handle->shutdown();
}

TEST_CASE("acquisition candidate scores a point list") {
  SandboxConfig config;
  auto handle =
      CandidateHandle::spawn(read_fixture("ei_acquisition.py"), "acquisition", config);
  const nlohmann::json response =
      handle->call({{"op", "utility"},
                    {"stage_index", 1},
                    {"iteration", 5},
                    {"best_f", 0.5},
                    {"points", nlohmann::json::array({{{"mu", 0.0}, {"sigma", 0.0}},
                                                      {{"mu", 2.0}, {"sigma", 0.0}},
                                                      {{"mu", 0.0}, {"sigma", 1.0}}})}});
  const auto& utilities = response.at("utility");
  REQUIRE(utilities.size() == 3);
  CHECK(utilities[0].get<double>() == doctest::Approx(0.5));   // sigma=0: max(best-mu, 0)
  CHECK(utilities[1].get<double>() == doctest::Approx(0.0));
  CHECK(utilities[2].get<double>() > 0.0);
  handle->shutdown();
}

TEST_CASE("syntax errors are illegal code with the child's stderr as detail") {
  SandboxConfig config;
  try {
    CandidateHandle::spawn(read_fixture("syntax_error.py"), "learning_rate", config);
    FAIL("spawn should have thrown");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kIllegalCode);
    CHECK(failure.verdict().detail.find("SyntaxError") != std::string::npos);
  }
  CHECK(CandidateHandle::live_process_count() == 0);
}

TEST_CASE("missing entry point is illegal code") {
  SandboxConfig config;
  try {
    CandidateHandle::spawn("def wrong_name():\n    return 1\n", "learning_rate", config);
    FAIL("spawn should have thrown");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kIllegalCode);
    CHECK(failure.verdict().detail.find("adjust_learning_rate") != std::string::npos);
  }
}

TEST_CASE("slow calls map to the timeout verdict and the child is killed") {
  SandboxConfig config;
  config.call_timeout_ms = 800;
  auto handle = CandidateHandle::spawn(read_fixture("sleepy_lr.py"), "learning_rate", config);
  try {
    handle->call(lr_request(1.0));
    FAIL("call should have timed out");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kTimeout);
  }
  CHECK(CandidateHandle::live_process_count() == 0);
}

TEST_CASE("non-finite floats cross the wire as markers and map to NonFinite") {
  SandboxConfig config;
  auto handle = CandidateHandle::spawn(read_fixture("nan_lr.py"), "learning_rate", config);
  const nlohmann::json response = handle->call(lr_request(1.0));
  CHECK(response.at("learning_rate").is_string());
  try {
    require_finite_number(response, "learning_rate");
    FAIL("nan marker should have thrown");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kNonFinite);
  }
  handle->shutdown();
}

TEST_CASE("candidate exceptions map to runtime failures with the message") {
  SandboxConfig config;
  auto handle =
      CandidateHandle::spawn(read_fixture("runtime_error_lr.py"), "learning_rate", config);
  try {
    handle->call(lr_request(1.0));
    FAIL("call should have thrown");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kRuntimeFailure);
    CHECK(failure.verdict().detail.find("ValueError") != std::string::npos);
  }
  handle->shutdown();
}

TEST_CASE("candidate prints cannot corrupt the protocol stream") {
  SandboxConfig config;
  const std::string chatty =
      "print('loading...')\n"
      "def num_steps(subproblem_index, overflow, log_lambda):\n"
      "    print('thinking about', subproblem_index)\n"
      "    return 7\n";
  auto handle = CandidateHandle::spawn(chatty, "steps", config);
  const nlohmann::json response = handle->call(
      {{"op", "steps"}, {"subproblem_index", 3}, {"overflow", 0.2}, {"log_lambda", 0.0}});
  CHECK(require_integer(response, "steps") == 7);
  handle->shutdown();
}

TEST_CASE("a missing interpreter is a configuration error, not a candidate verdict") {
  SandboxConfig config;
  config.runtime_command = {"/nonexistent/python-99"};
  CHECK_THROWS_AS(
      CandidateHandle::spawn(read_fixture("constant_lr.py"), "learning_rate", config),
      ConfigError);
  CHECK(CandidateHandle::live_process_count() == 0);
}

TEST_CASE("payload accessors validate types") {
  const nlohmann::json response = {{"learning_rate", "fast"}, {"steps", 2.5}};
  CHECK_THROWS_AS(require_finite_number(response, "learning_rate"), CandidateFailure);
  CHECK_THROWS_AS(require_finite_number(response, "missing"), CandidateFailure);
  CHECK_THROWS_AS(require_integer(response, "steps"), CandidateFailure);
  const nlohmann::json inf_response = {{"learning_rate", "-inf"}};
  try {
    require_finite_number(inf_response, "learning_rate");
    FAIL("inf marker should have thrown");
  } catch (const CandidateFailure& failure) {
    CHECK(failure.verdict().tag == Legality::kNonFinite);
  }
}

TEST_CASE("fixture batch of five candidates yields pass rate 0.80") {
  SandboxConfig config;
  const std::vector<std::pair<std::string, std::string>> batch = {
      {"constant_lr.py", "learning_rate"},
      {"fixed_steps80.py", "steps"},
      {"ei_acquisition.py", "acquisition"},
      {"tiny_lr.py", "learning_rate"},
      {"syntax_error.py", "learning_rate"},
  };
  std::vector<LegalityVerdict> verdicts;
  for (const auto& [fixture, component] : batch) {
    verdicts.push_back(LegalityVerdict{spawn_verdict(fixture, component, config), ""});
  }
  const auto rate = pass_rate(verdicts);
  CHECK_FALSE(rate.empty_input);
  CHECK(rate.value == doctest::Approx(0.80).epsilon(1e-15));
  CHECK(CandidateHandle::live_process_count() == 0);
}

TEST_CASE("no child processes leak across the suite") {
  CHECK(CandidateHandle::live_process_count() == 0);
}
