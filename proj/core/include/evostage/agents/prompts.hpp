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

#ifndef EVOSTAGE_AGENTS_PROMPTS_HPP_
#define EVOSTAGE_AGENTS_PROMPTS_HPP_

#include <map>
#include <string>
#include <vector>

namespace evostage {

struct PromptTemplate {
  std::string template_id;
  std::string body;  // text with {placeholder} markers
};

// Literal one-pass substitution of {name} markers (names are [a-z_]+).
// Bound values are inserted verbatim and never re-scanned.  Throws
// std::invalid_argument listing every unbound placeholder.
std::string render_prompt(const std::string& body,
                          const std::map<std::string, std::string>& bindings);

// Contents of the first fenced code block (``` markers stripped, optional
// language tag dropped).  Without a fence, returns the whole text only when
// it looks like a contiguous code block rather than prose; otherwise throws
// std::runtime_error("no code block").
std::string extract_code(const std::string& llm_text);

// All fenced code blocks, in order of appearance.
std::vector<std::string> extract_code_blocks(const std::string& llm_text);

// Text outside the first fenced block (the "thought" accompanying the code).
std::string text_outside_first_block(const std::string& llm_text);

// Built-in prompt bodies.
const PromptTemplate& coordinator_template();
const PromptTemplate& coder_stage_template();
const PromptTemplate& global_explore_template();
const PromptTemplate& global_enhance_template();

}  // namespace evostage

#endif  // EVOSTAGE_AGENTS_PROMPTS_HPP_
