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

#include "evostage/agents/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace evostage {
namespace {

bool is_placeholder_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

struct FencedBlock {
  std::string contents;
  std::size_t open_start = std::string::npos;   // offset of the opening ```
  std::size_t close_end = std::string::npos;    // offset just past the closing fence line
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

bool is_fence_line(const std::string& line) { return trim(line).rfind("```", 0) == 0; }

std::vector<FencedBlock> find_blocks(const std::string& text) {
  std::vector<FencedBlock> blocks;
  const std::vector<std::string> lines = split_lines(text);
  std::size_t offset = 0;
  bool inside = false;
  FencedBlock current;
  std::string body;
  for (const auto& line : lines) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (is_fence_line(line)) {
      if (!inside) {
        inside = true;
        current = FencedBlock{};
        current.open_start = line_start;
        body.clear();
      } else {
        inside = false;
        current.close_end = offset;
        current.contents = body;
        blocks.push_back(current);
      }
      continue;
    }
    if (inside) {
      body += line;
      body += '\n';
    }
  }
  return blocks;
}

int word_count(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  int count = 0;
  while (in >> word) ++count;
  return count;
}

// Heuristic for unfenced responses: accept only text with clear code
// structure and no prose sentences.
bool looks_like_code(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);
  bool has_code_marker = false;
  for (const auto& raw : lines) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("def ", 0) == 0 || line.rfind("class ", 0) == 0 ||
        line.rfind("import ", 0) == 0 || line.rfind("from ", 0) == 0 ||
        line.rfind("return", 0) == 0 || line.rfind("#", 0) == 0 || line.rfind("@", 0) == 0 ||
        line.find('=') != std::string::npos) {
      has_code_marker = true;
    }
    // A long capitalized line ending in a period with no code punctuation
    // reads as a prose sentence.
    const bool capitalized = std::isupper(static_cast<unsigned char>(line.front())) != 0;
    const bool sentence_end = line.back() == '.';
    const bool codey = line.find('(') != std::string::npos || line.find('=') != std::string::npos ||
                       line.find(':') != std::string::npos || raw.rfind("    ", 0) == 0;
    if (capitalized && sentence_end && !codey && word_count(line) >= 4) return false;
  }
  return has_code_marker;
}

}  // namespace

std::string render_prompt(const std::string& body,
                          const std::map<std::string, std::string>& bindings) {
  std::string rendered;
  rendered.reserve(body.size());
  std::vector<std::string> missing;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] != '{') {
      rendered += body[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < body.size() && is_placeholder_char(body[j])) ++j;
    if (j > i + 1 && j < body.size() && body[j] == '}') {
      const std::string name = body.substr(i + 1, j - i - 1);
      const auto found = bindings.find(name);
      if (found == bindings.end()) {
        missing.push_back(name);
      } else {
        rendered += found->second;
      }
      i = j + 1;
      continue;
    }
    rendered += body[i++];  // not a placeholder; keep the brace literally
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& name : missing) {
      if (!names.empty()) names += ", ";
      names += name;
    }
    throw std::invalid_argument("missing placeholder bindings: " + names);
  }
  return rendered;
}

std::vector<std::string> extract_code_blocks(const std::string& llm_text) {
  std::vector<std::string> contents;
  for (const auto& block : find_blocks(llm_text)) contents.push_back(block.contents);
  return contents;
}

std::string text_outside_first_block(const std::string& llm_text) {
  const std::vector<FencedBlock> blocks = find_blocks(llm_text);
  if (blocks.empty()) return trim(llm_text);
  const FencedBlock& first = blocks.front();
  return trim(llm_text.substr(0, first.open_start) + llm_text.substr(std::min(
                                                         first.close_end, llm_text.size())));
}

std::string extract_code(const std::string& llm_text) {
  const std::vector<FencedBlock> blocks = find_blocks(llm_text);
  if (!blocks.empty()) return blocks.front().contents;
  const std::string trimmed = trim(llm_text);
  if (!trimmed.empty() && trimmed.find("```") == std::string::npos && looks_like_code(trimmed)) {
    return trimmed + "\n";
  }
  throw std::runtime_error("no code block");
}

const PromptTemplate& coordinator_template() {
  static const PromptTemplate kTemplate{
      "coordinator",
      "You coordinate the stagewise design of an optimization algorithm.\n"
      "\n"
      "Task:\n{task_description}\n"
      "\n"
      "Execution information so far (initial state I_0, then one record per finished "
      "stage):\n{history_info}\n"
      "\n"
      "Stage {stage_index} is about to be designed. Reflect on the records above: what "
      "worked, what stalled, and what the next stage must change. Then state one concrete "
      "goal for stage {stage_index}.\n"
      "\n"
      "Answer with your analysis followed by a final line of the form\n"
      "GOAL: <one-sentence goal for this stage>\n"};
  return kTemplate;
}

const PromptTemplate& coder_stage_template() {
  static const PromptTemplate kTemplate{
      "coder_stage",
      "You implement one component of an optimization algorithm, one stage at a time.\n"
      "\n"
      "Task:\n{task_description}\n"
      "\n"
      "Component contract:\n{component_spec}\n"
      "\n"
      "Your fragments for the earlier stages (the new fragment replaces them from stage "
      "{stage_index} on):\n{history_info}\n"
      "\n"
      "Coordinator goal for stage {stage_index}:\n{goal}\n"
      "\n"
      "Write the component implementation to use during stage {stage_index}. Return one "
      "fenced code block containing a complete implementation of the contract.\n"};
  return kTemplate;
}

const PromptTemplate& global_explore_template() {
  static const PromptTemplate kTemplate{
      "global_explore",
      "You design one component of an optimization algorithm in multi-stage form: the run "
      "is split into stages and your component may behave differently in each stage.\n"
      "\n"
      "Task:\n{task_description}\n"
      "\n"
      "Component contract:\n{component_spec}\n"
      "\n"
      "Reference designs with their per-stage execution results:\n{references}\n"
      "\n"
      "Create a new design that differs in form from every reference. Return exactly one "
      "fenced code block per stage, in stage order; each block must be a complete "
      "implementation of the contract used during that stage.\n"};
  return kTemplate;
}

const PromptTemplate& global_enhance_template() {
  static const PromptTemplate kTemplate{
      "global_enhance",
      "You refine one component of an optimization algorithm in multi-stage form: the run "
      "is split into stages and your component may behave differently in each stage.\n"
      "\n"
      "Task:\n{task_description}\n"
      "\n"
      "Component contract:\n{component_spec}\n"
      "\n"
      "Reference design, its score, and its per-stage execution results:\n{reference_info}\n"
      "\n"
      "Enhance this design with a few targeted modifications, keeping its overall form. "
      "Return exactly one fenced code block per stage, in stage order; each block must be a "
      "complete implementation of the contract used during that stage.\n"};
  return kTemplate;
}

}  // namespace evostage
