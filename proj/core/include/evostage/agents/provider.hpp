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

#ifndef EVOSTAGE_AGENTS_PROVIDER_HPP_
#define EVOSTAGE_AGENTS_PROVIDER_HPP_

#include <string>

namespace evostage {

// One LLM call.  The key tuple (role_id, template_id, stage_index,
// generation_index, attempt) identifies the call deterministically; the mock
// provider resolves fixtures from it.
struct ChatRequest {
  std::string role_id;      // "coordinator" or "coder_<component_id>"
  std::string template_id;  // "coordinator", "coder_stage", "global_explore", "global_enhance"
  int stage_index = 0;      // 0 for whole-heuristic (global) calls
  int generation_index = 0; // reproduction index within the run
  int attempt = 0;          // retry counter
  double temperature = 0.0;
  std::string model;
  std::string prompt;
};

class Provider {
 public:
  virtual ~Provider() = default;
  // Returns the raw completion text; throws ProviderError on transport
  // failure (which aborts the run with a partial report).
  virtual std::string complete(const ChatRequest& request) = 0;
};

// Deterministic provider reading recorded responses from
//   <dir>/<role_id>/<template_id>/g<generation>_s<stage>_a<attempt>.txt
// Unknown keys are an explicit ProviderError, never a silent default.
class MockProvider : public Provider {
 public:
  explicit MockProvider(std::string fixture_dir);
  std::string complete(const ChatRequest& request) override;
  static std::string fixture_relative_path(const ChatRequest& request);

 private:
  std::string fixture_dir_;
};

// Chat-completion HTTP transport.  Endpoint from EVOSTAGE_LLM_URL, bearer
// token from EVOSTAGE_LLM_KEY (both overridable via Options).
class HttpProvider : public Provider {
 public:
  struct Options {
    std::string url;      // e.g. http://host:port/v1/chat/completions
    std::string api_key;
    int timeout_ms = 60000;
    int max_retries = 2;  // on transport errors / 5xx
  };
  static Options options_from_env();

  explicit HttpProvider(Options options);
  std::string complete(const ChatRequest& request) override;

 private:
  Options options_;
};

}  // namespace evostage

#endif  // EVOSTAGE_AGENTS_PROVIDER_HPP_
