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

#ifndef EVOSTAGE_SANDBOX_HPP_
#define EVOSTAGE_SANDBOX_HPP_

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evostage/errors.hpp"

namespace evostage {

struct SandboxConfig {
  // argv prefix for the candidate interpreter; the host script path, candidate
  // source path, and component id are appended.
  std::vector<std::string> runtime_command = {"python3"};
  int call_timeout_ms = 2000;
  int startup_timeout_ms = 10000;
  // Scratch directory for candidate/host files; empty selects a per-process
  // temp directory.
  std::string work_dir;
};

// One long-lived candidate child process speaking the line protocol.
// Every failure mode surfaces as a CandidateFailure carrying a legality
// verdict (and kills the child); a missing interpreter is a ConfigError.
class CandidateHandle {
 public:
  // Writes `source` to a scratch file, starts the child, and waits for the
  // {"op":"hello"} handshake.  Load failures map to IllegalCode with the
  // child's stderr as detail.
  static std::unique_ptr<CandidateHandle> spawn(const std::string& source,
                                                const std::string& component_id,
                                                const SandboxConfig& config);

  ~CandidateHandle();
  CandidateHandle(const CandidateHandle&) = delete;
  CandidateHandle& operator=(const CandidateHandle&) = delete;

  // Sends one request line, reads one response line within call_timeout.
  // Timeout -> Timeout verdict; malformed/missing response -> RuntimeFailure;
  // a {"error": ...} response -> RuntimeFailure with the candidate's message.
  nlohmann::json call(const nlohmann::json& request);

  const std::string& component_id() const { return component_id_; }
  bool ready() const { return ready_; }

  // Polite shutdown: sends {"op":"bye"}, reaps the child, kills on timeout.
  void shutdown();

  // Candidate children currently alive in this process (leak check).
  static int live_process_count();

 private:
  CandidateHandle() = default;

  std::string read_line(int timeout_ms, const char* phase);
  void kill_child();
  void reap_child();
  std::string stderr_tail() const;

  std::string component_id_;
  std::string stderr_path_;
  int call_timeout_ms_ = 2000;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  long pid_ = -1;
  bool ready_ = false;
  bool reaped_ = true;
  std::string buffer_;
};

// Validated accessors for response payloads.  Non-finite markers ("nan",
// "inf", "-inf") raise NonFinite; wrong types raise RuntimeFailure.
double require_finite_number(const nlohmann::json& response, const std::string& field);
long require_integer(const nlohmann::json& response, const std::string& field);

}  // namespace evostage

#endif  // EVOSTAGE_SANDBOX_HPP_
