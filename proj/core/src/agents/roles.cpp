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

#include "evostage/agents/roles.hpp"

#include <cstdio>
#include <sstream>

#include "evostage/agents/prompts.hpp"
#include "evostage/errors.hpp"

namespace evostage {
namespace {

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string describe_record(const StageRecord& record) {
  std::string text;
  for (const auto& [name, value] : record.metrics) {
    if (!text.empty()) text += ", ";
    text += name + "=" + format_metric(value);
  }
  if (!record.summary.empty()) {
    if (!text.empty()) text += " | ";
    text += record.summary;
  }
  return text;
}

std::string describe_component_spec(const ComponentSpec& component) {
  return "component '" + component.id + "'\n" + component.signature + "\n" +
         component.description + "\n\nBaseline implementation:\n```python\n" +
         component.starter_source + "```";
}

std::string describe_prior_fragments(const std::vector<StageFragment>& fragments) {
  if (fragments.empty()) return "(none yet; this is the first stage)";
  std::string text;
  for (const auto& fragment : fragments) {
    text += "stage " + std::to_string(fragment.stage_index);
    if (!fragment.goal_text.empty()) text += " (goal: " + fragment.goal_text + ")";
    text += ":\n```python\n" + fragment.source;
    if (fragment.source.empty() || fragment.source.back() != '\n') text += '\n';
    text += "```\n";
  }
  return text;
}

std::string retry_suffix(int attempt) {
  if (attempt == 0) return "";
  return "\n\nYour previous reply could not be parsed. Return only code in one fenced block.";
}

std::string multi_block_retry_suffix(int attempt, int stage_count) {
  if (attempt == 0) return "";
  return "\n\nYour previous reply could not be parsed. Return exactly " +
         std::to_string(stage_count) + " fenced code blocks, one per stage, and nothing else.";
}

// Shared body of the two global operators.
std::vector<MultiStageHeuristic> run_global_operator(
    Provider& provider, const AgentSettings& settings, const TaskSpec& task,
    const PromptTemplate& prompt_template, const std::string& references_binding_name,
    const std::string& references_text, int generation_index) {
  std::vector<MultiStageHeuristic> components;
  components.reserve(task.components.size());
  for (const auto& component : task.components) {
    const std::string prompt =
        render_prompt(prompt_template.body,
                      {{"task_description", task.overview},
                       {"component_spec", describe_component_spec(component)},
                       {references_binding_name, references_text}});

    std::vector<std::string> blocks;
    std::string failure_detail;
    for (int attempt = 0; attempt <= settings.max_retries; ++attempt) {
      ChatRequest request;
      request.role_id = "coder_" + component.id;
      request.template_id = prompt_template.template_id;
      request.stage_index = 0;
      request.generation_index = generation_index;
      request.attempt = attempt;
      request.temperature = settings.coder_temperature;
      request.model = settings.model;
      request.prompt = prompt + multi_block_retry_suffix(attempt, task.stage_count);

      const std::string response = provider.complete(request);
      blocks = extract_code_blocks(response);
      if (static_cast<int>(blocks.size()) == task.stage_count) break;
      failure_detail = "expected " + std::to_string(task.stage_count) +
                       " fenced code blocks, got " + std::to_string(blocks.size());
      blocks.clear();
    }
    if (blocks.empty()) {
      throw CandidateFailure(LegalityVerdict{
          Legality::kIllegalCode, "coder_" + component.id + ": " + failure_detail});
    }

    MultiStageHeuristic heuristic;
    heuristic.component_id = component.id;
    for (int stage = 0; stage < task.stage_count; ++stage) {
      StageFragment fragment;
      fragment.stage_index = stage;
      fragment.source = blocks[static_cast<std::size_t>(stage)];
      if (fragment.source.empty()) {
        throw CandidateFailure(LegalityVerdict{
            Legality::kIllegalCode,
            "coder_" + component.id + ": empty code block for stage " + std::to_string(stage)});
      }
      heuristic.stages.push_back(std::move(fragment));
    }
    components.push_back(std::move(heuristic));
  }
  return components;
}

}  // namespace

std::string describe_history(const StageRecord& initial_record,
                             const std::vector<StageRecord>& stage_history) {
  std::string text = "I_0 (before execution): " + describe_record(initial_record) + "\n";
  for (std::size_t i = 0; i < stage_history.size(); ++i) {
    text += "I_" + std::to_string(i + 1) + " (after stage " + std::to_string(i) +
            "): " + describe_record(stage_history[i]) + "\n";
  }
  return text;
}

std::string describe_reference(const AlgorithmIndividual& individual,
                               const std::string& component_id) {
  std::string text = "design " + individual.id;
  if (individual.score.has_value()) {
    text += " with score " + format_metric(*individual.score);
  }
  text += "\n";
  for (const auto& component : individual.components) {
    if (component.component_id != component_id) continue;
    for (const auto& fragment : component.stages) {
      text += "stage " + std::to_string(fragment.stage_index);
      if (!fragment.goal_text.empty()) text += " (goal: " + fragment.goal_text + ")";
      const auto stage_idx = static_cast<std::size_t>(fragment.stage_index);
      if (stage_idx < individual.info.stage_records.size()) {
        text += " [" + describe_record(individual.info.stage_records[stage_idx]) + "]";
      }
      text += ":\n```python\n" + fragment.source;
      if (fragment.source.empty() || fragment.source.back() != '\n') text += '\n';
      text += "```\n";
    }
  }
  return text;
}

StageGoal coordinator_reflect(Provider& provider, const AgentSettings& settings,
                              const TaskSpec& task, const StageRecord& initial_record,
                              const std::vector<StageRecord>& stage_history, int stage_index,
                              int generation_index) {
  const std::string prompt =
      render_prompt(coordinator_template().body,
                    {{"task_description", task.overview},
                     {"history_info", describe_history(initial_record, stage_history)},
                     {"stage_index", std::to_string(stage_index)}});

  for (int attempt = 0; attempt <= settings.max_retries; ++attempt) {
    ChatRequest request;
    request.role_id = "coordinator";
    request.template_id = coordinator_template().template_id;
    request.stage_index = stage_index;
    request.generation_index = generation_index;
    request.attempt = attempt;
    request.temperature = settings.coordinator_temperature;
    request.model = settings.model;
    request.prompt = prompt;

    const std::string response = provider.complete(request);
    StageGoal goal;
    goal.stage_index = stage_index;
    const std::size_t marker = response.find("GOAL:");
    if (marker != std::string::npos) {
      goal.reflection_text = response.substr(0, marker);
      goal.goal_text = response.substr(marker + 5);
    } else {
      goal.goal_text = response;
    }
    // Trim whitespace.
    const auto trim = [](std::string& text) {
      const auto begin = text.find_first_not_of(" \t\r\n");
      const auto end = text.find_last_not_of(" \t\r\n");
      text = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
    };
    trim(goal.reflection_text);
    trim(goal.goal_text);
    if (!goal.goal_text.empty()) return goal;
  }
  throw CandidateFailure(LegalityVerdict{
      Legality::kIllegalCode, "coordinator returned no usable goal for stage " +
                                  std::to_string(stage_index)});
}

CodeArtifact coder_generate(Provider& provider, const AgentSettings& settings,
                            const TaskSpec& task, const ComponentSpec& component,
                            const StageGoal& goal, const std::vector<StageFragment>& prior_stages,
                            int generation_index) {
  const std::string prompt =
      render_prompt(coder_stage_template().body,
                    {{"task_description", task.overview},
                     {"component_spec", describe_component_spec(component)},
                     {"history_info", describe_prior_fragments(prior_stages)},
                     {"goal", goal.goal_text},
                     {"stage_index", std::to_string(goal.stage_index)}});

  std::string failure_detail = "no code block";
  for (int attempt = 0; attempt <= settings.max_retries; ++attempt) {
    ChatRequest request;
    request.role_id = "coder_" + component.id;
    request.template_id = coder_stage_template().template_id;
    request.stage_index = goal.stage_index;
    request.generation_index = generation_index;
    request.attempt = attempt;
    request.temperature = settings.coder_temperature;
    request.model = settings.model;
    request.prompt = prompt + retry_suffix(attempt);

    const std::string response = provider.complete(request);
    try {
      CodeArtifact artifact;
      artifact.source = extract_code(response);
      artifact.raw_response = response;
      if (settings.thoughts_of_code) {
        artifact.thought = text_outside_first_block(response);
      }
      if (artifact.source.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw std::runtime_error("empty code block");
      }
      return artifact;
    } catch (const std::runtime_error& error) {
      failure_detail = error.what();
    }
  }
  throw CandidateFailure(LegalityVerdict{
      Legality::kIllegalCode, "coder_" + component.id + " stage " +
                                  std::to_string(goal.stage_index) + ": " + failure_detail});
}

std::vector<MultiStageHeuristic> global_explore(Provider& provider,
                                                const AgentSettings& settings,
                                                const TaskSpec& task,
                                                const std::vector<AlgorithmIndividual>& references,
                                                int generation_index) {
  if (references.empty()) {
    throw std::invalid_argument("global_explore requires at least one reference");
  }
  // Per-component reference text is what each coder sees; assemble per call.
  std::vector<MultiStageHeuristic> components;
  components.reserve(task.components.size());
  for (const auto& component : task.components) {
    std::string references_text;
    for (std::size_t i = 0; i < references.size(); ++i) {
      references_text += "--- reference " + std::to_string(i + 1) + " ---\n" +
                         describe_reference(references[i], component.id);
    }
    TaskSpec single_component_task = task;
    single_component_task.components = {component};
    std::vector<MultiStageHeuristic> one =
        run_global_operator(provider, settings, single_component_task, global_explore_template(),
                            "references", references_text, generation_index);
    components.push_back(std::move(one.front()));
  }
  return components;
}

std::vector<MultiStageHeuristic> global_enhance(Provider& provider,
                                                const AgentSettings& settings,
                                                const TaskSpec& task,
                                                const AlgorithmIndividual& reference,
                                                int generation_index) {
  std::vector<MultiStageHeuristic> components;
  components.reserve(task.components.size());
  for (const auto& component : task.components) {
    TaskSpec single_component_task = task;
    single_component_task.components = {component};
    std::vector<MultiStageHeuristic> one = run_global_operator(
        provider, settings, single_component_task, global_enhance_template(), "reference_info",
        describe_reference(reference, component.id), generation_index);
    components.push_back(std::move(one.front()));
  }
  return components;
}

}  // namespace evostage
