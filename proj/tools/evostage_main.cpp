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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "evostage/config.hpp"
#include "evostage/domain_factory.hpp"
#include "evostage/errors.hpp"
#include "evostage/evolution.hpp"
#include "evostage/persist.hpp"
#include "evostage/report.hpp"
#include "evostage/stagewise.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitProvider = 3;
constexpr int kExitDomain = 4;

struct CommonOptions {
  std::string config_path;
  std::string profile;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "evostage-out";
};

void add_common(CLI::App* command, CommonOptions* options) {
  command->add_option("--config", options->config_path, "JSON config file");
  command->add_option("--profile", options->profile, "defaults profile")
      ->check(CLI::IsMember({"gp", "bo"}));
  command->add_option("--seed", options->seed, "run seed (overrides config)");
  command->add_option("--out", options->out_dir, "output directory");
}

evostage::RunConfig resolve_config(const CommonOptions& options) {
  evostage::RunConfig config = options.config_path.empty()
                                   ? evostage::parse_config("", options.profile)
                                   : evostage::load_config(options.config_path, options.profile);
  if (options.seed_given) {
    config.seed = options.seed;
    config.validate();
  }
  return config;
}

int run_and_report(const evostage::RunConfig& config, evostage::Provider& provider,
                   const std::string& out_dir) {
  std::unique_ptr<evostage::Domain> domain = evostage::make_domain(config);
  const evostage::RunReport report = evostage::run_evolution(config, *domain, provider);
  evostage::emit_report(report, out_dir);

  std::printf("evaluations: %zu\n", report.records.size());
  std::printf("pass_rate: %.4f\n", report.pass_rate());
  if (report.best_individual.has_value() && report.best_individual->score.has_value()) {
    std::printf("best_score: %.17g\n", *report.best_individual->score);
  } else {
    std::printf("best_score: none\n");
  }
  std::printf("report: %s/report.json\n", out_dir.c_str());
  if (report.aborted) {
    std::fprintf(stderr, "run aborted: %s\n", report.abort_reason.c_str());
    return kExitProvider;
  }
  return kExitOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw evostage::ConfigError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evostage — evolves multi-stage heuristics with LLM agents"};
  app.require_subcommand(1);

  CommonOptions run_options;
  CLI::App* run_cmd = app.add_subcommand("run", "run an evolution with the HTTP LLM provider");
  add_common(run_cmd, &run_options);

  CommonOptions replay_options;
  std::string fixtures_dir;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "run an evolution against recorded LLM fixtures");
  add_common(replay_cmd, &replay_options);
  replay_cmd->add_option("--fixtures", fixtures_dir, "fixture directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  CommonOptions eval_options;
  std::string individual_path;
  CLI::App* eval_cmd = app.add_subcommand("eval-one", "re-evaluate one saved individual");
  add_common(eval_cmd, &eval_options);
  eval_cmd->add_option("--individual", individual_path, "individual JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string report_path;
  std::string report_out = "evostage-out";
  CLI::App* report_cmd = app.add_subcommand("report", "regenerate report files from a saved run");
  report_cmd->add_option("--run", report_path, "report.json from a previous run")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitConfig;
  }
  run_options.seed_given = run_cmd->count("--seed") > 0;
  replay_options.seed_given = replay_cmd->count("--seed") > 0;
  eval_options.seed_given = eval_cmd->count("--seed") > 0;

  try {
    if (run_cmd->parsed()) {
      const evostage::RunConfig config = resolve_config(run_options);
      evostage::HttpProvider provider(evostage::HttpProvider::options_from_env());
      return run_and_report(config, provider, run_options.out_dir);
    }
    if (replay_cmd->parsed()) {
      const evostage::RunConfig config = resolve_config(replay_options);
      evostage::MockProvider provider(fixtures_dir);
      return run_and_report(config, provider, replay_options.out_dir);
    }
    if (eval_cmd->parsed()) {
      const evostage::RunConfig config = resolve_config(eval_options);
      evostage::AlgorithmIndividual individual;
      try {
        individual = evostage::individual_from_json(nlohmann::json::parse(read_file(individual_path)));
      } catch (const nlohmann::json::exception& error) {
        throw evostage::ConfigError("individual file '" + individual_path + "': " + error.what());
      }
      std::vector<evostage::MultiStageHeuristic> components = individual.components;

      std::unique_ptr<evostage::Domain> domain = evostage::make_domain(config);
      const std::uint64_t episode_seed = evostage::Rng::mix(config.seed ^ 0x7461736bULL);
      std::unique_ptr<evostage::StagedTask> task = domain->make_task(episode_seed);
      const evostage::AlgorithmIndividual result =
          evostage::evaluate_full(domain->task_spec(), *task, std::move(components));

      nlohmann::json out{{"legality", std::string(to_string(result.legality))},
                         {"legality_detail", result.legality_detail},
                         {"final_metrics", result.info.final_metrics}};
      out["score"] = result.score.has_value() ? nlohmann::json(*result.score)
                                              : nlohmann::json(nullptr);
      std::cout << out.dump(2) << '\n';
      return kExitOk;
    }
    if (report_cmd->parsed()) {
      const evostage::RunReport report = evostage::load_report(report_path);
      evostage::emit_report(report, report_out);
      std::printf("report files written to %s\n", report_out.c_str());
      return kExitOk;
    }
  } catch (const evostage::ConfigError& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return kExitConfig;
  } catch (const evostage::ProviderError& error) {
    std::fprintf(stderr, "provider error: %s\n", error.what());
    return kExitProvider;
  } catch (const evostage::DomainError& error) {
    std::fprintf(stderr, "domain error: %s\n", error.what());
    return kExitDomain;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return kExitOk;
}
