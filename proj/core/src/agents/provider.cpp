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

#include "evostage/agents/provider.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "evostage/errors.hpp"

namespace evostage {

MockProvider::MockProvider(std::string fixture_dir) : fixture_dir_(std::move(fixture_dir)) {}

std::string MockProvider::fixture_relative_path(const ChatRequest& request) {
  return request.role_id + "/" + request.template_id + "/g" +
         std::to_string(request.generation_index) + "_s" + std::to_string(request.stage_index) +
         "_a" + std::to_string(request.attempt) + ".txt";
}

std::string MockProvider::complete(const ChatRequest& request) {
  const std::string path = fixture_dir_ + "/" + fixture_relative_path(request);
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw ProviderError("no fixture for request key (" + request.role_id + ", " +
                        request.template_id + ", stage " + std::to_string(request.stage_index) +
                        ", generation " + std::to_string(request.generation_index) +
                        ", attempt " + std::to_string(request.attempt) + "): expected file " +
                        path);
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

HttpProvider::Options HttpProvider::options_from_env() {
  Options options;
  if (const char* url = std::getenv("EVOSTAGE_LLM_URL")) options.url = url;
  if (const char* key = std::getenv("EVOSTAGE_LLM_KEY")) options.api_key = key;
  return options;
}

HttpProvider::HttpProvider(Options options) : options_(std::move(options)) {
  if (options_.url.empty()) {
    throw ConfigError("no LLM endpoint configured: set EVOSTAGE_LLM_URL");
  }
}

std::string HttpProvider::complete(const ChatRequest& request) {
  // Split the URL into host base and path for the HTTP client.
  const std::string& url = options_.url;
  if (url.rfind("https://", 0) == 0) {
    throw ProviderError(
        "this build speaks plain http only; point EVOSTAGE_LLM_URL at an http endpoint or a "
        "local TLS-terminating proxy");
  }
  if (url.rfind("http://", 0) != 0) {
    throw ProviderError("EVOSTAGE_LLM_URL must start with http://");
  }
  const std::size_t host_start = std::string("http://").size();
  const std::size_t path_start = url.find('/', host_start);
  const std::string base = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  const nlohmann::json body = {
      {"model", request.model},
      {"temperature", request.temperature},
      {"messages", nlohmann::json::array({nlohmann::json{{"role", "user"},
                                                         {"content", request.prompt}}})}};

  httplib::Client client(base);
  client.set_connection_timeout(options_.timeout_ms / 1000, (options_.timeout_ms % 1000) * 1000);
  client.set_read_timeout(options_.timeout_ms / 1000, (options_.timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }

  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    httplib::Result result = client.Post(path, headers, body.dump(), "application/json");
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw ProviderError("LLM endpoint returned HTTP " + std::to_string(result->status) + ": " +
                          result->body);
    }
    const nlohmann::json parsed = nlohmann::json::parse(result->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty() ||
        !parsed["choices"][0].contains("message")) {
      throw ProviderError("malformed completion response: " + result->body);
    }
    return parsed["choices"][0]["message"].value("content", "");
  }
  throw ProviderError("LLM endpoint unreachable after " +
                      std::to_string(options_.max_retries + 1) + " attempts: " + last_error);
}

}  // namespace evostage
