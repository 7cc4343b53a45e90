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

#include "evostage/sandbox.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "evostage/host_script.hpp"

namespace evostage {
namespace {

std::atomic<int> g_live_children{0};
std::atomic<long> g_handle_counter{0};

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left > 0 ? static_cast<int>(left) : 0;
}

void ignore_sigpipe_once() {
  static std::once_flag flag;
  // A write to a dead child must surface as EPIPE, not kill the engine.
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

const std::string& process_work_dir() {
  static const std::string dir = [] {
    std::string templ =
        (std::filesystem::temp_directory_path() / "evostage-sandbox-XXXXXX").string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr) {
      throw ConfigError("cannot create sandbox scratch directory");
    }
    return std::string(buf.data());
  }();
  return dir;
}

bool is_executable_file(const std::string& path) {
  struct stat st{};
  return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
         ::access(path.c_str(), X_OK) == 0;
}

bool find_in_path(const std::string& name) {
  if (name.find('/') != std::string::npos) return is_executable_file(name);
  const char* path_env = std::getenv("PATH");
  if (path_env == nullptr) return false;
  std::istringstream entries(path_env);
  std::string entry;
  while (std::getline(entries, entry, ':')) {
    if (entry.empty()) continue;
    if (is_executable_file(entry + "/" + name)) return true;
  }
  return false;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write sandbox file: " + path);
  file << content;
}

[[noreturn]] void child_exec(const std::vector<std::string>& argv, int stdin_fd, int stdout_fd,
                             const std::string& stderr_path) {
  ::dup2(stdin_fd, STDIN_FILENO);
  ::dup2(stdout_fd, STDOUT_FILENO);
  const int err_fd = ::open(stderr_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (err_fd >= 0) ::dup2(err_fd, STDERR_FILENO);
  std::vector<char*> c_argv;
  c_argv.reserve(argv.size() + 1);
  for (const auto& arg : argv) c_argv.push_back(const_cast<char*>(arg.c_str()));
  c_argv.push_back(nullptr);
  ::execvp(c_argv[0], c_argv.data());
  ::_exit(127);
}

}  // namespace

int CandidateHandle::live_process_count() { return g_live_children.load(); }

std::unique_ptr<CandidateHandle> CandidateHandle::spawn(const std::string& source,
                                                        const std::string& component_id,
                                                        const SandboxConfig& config) {
  ignore_sigpipe_once();
  if (config.runtime_command.empty()) {
    throw ConfigError("runtime_command must not be empty");
  }
  if (!find_in_path(config.runtime_command.front())) {
    throw ConfigError("candidate interpreter not found: " + config.runtime_command.front());
  }

  const std::string work_dir = config.work_dir.empty() ? process_work_dir() : config.work_dir;
  std::filesystem::create_directories(work_dir);
  const long serial = g_handle_counter.fetch_add(1);
  const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(serial);
  const std::string host_path = work_dir + "/host_" + tag + ".py";
  const std::string source_path = work_dir + "/candidate_" + tag + ".py";
  const std::string stderr_path = work_dir + "/candidate_" + tag + ".stderr.log";
  write_file(host_path, kCandidateHostScript);
  write_file(source_path, source);

  std::vector<std::string> argv = config.runtime_command;
  argv.push_back(host_path);
  argv.push_back(source_path);
  argv.push_back(component_id);

  int to_child[2];
  int from_child[2];
  if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
    throw ConfigError("pipe() failed for candidate sandbox");
  }

  const pid_t pid = ::fork();
  if (pid < 0) throw ConfigError("fork() failed for candidate sandbox");
  if (pid == 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    child_exec(argv, to_child[0], from_child[1], stderr_path);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  g_live_children.fetch_add(1);

  auto handle = std::unique_ptr<CandidateHandle>(new CandidateHandle());
  handle->component_id_ = component_id;
  handle->stderr_path_ = stderr_path;
  handle->call_timeout_ms_ = config.call_timeout_ms;
  handle->stdin_fd_ = to_child[1];
  handle->stdout_fd_ = from_child[0];
  handle->pid_ = pid;
  handle->reaped_ = false;

  // Handshake: {"op":"hello","component":<id>} within startup_timeout.
  std::string line;
  try {
    line = handle->read_line(config.startup_timeout_ms, "handshake");
  } catch (const CandidateFailure&) {
    const std::string detail = handle->stderr_tail();
    handle->kill_child();
    throw CandidateFailure(LegalityVerdict{
        Legality::kIllegalCode,
        detail.empty() ? "candidate produced no handshake" : detail});
  }
  nlohmann::json hello = nlohmann::json::parse(line, nullptr, false);
  if (hello.is_discarded() || hello.value("op", "") != "hello" ||
      hello.value("component", "") != component_id) {
    handle->kill_child();
    throw CandidateFailure(
        LegalityVerdict{Legality::kIllegalCode, "malformed handshake: " + line});
  }
  handle->ready_ = true;
  return handle;
}

CandidateHandle::~CandidateHandle() { kill_child(); }

std::string CandidateHandle::stderr_tail() const {
  std::ifstream file(stderr_path_, std::ios::binary);
  if (!file) return "";
  std::ostringstream buffer;
  buffer << file.rdbuf();
  std::string text = buffer.str();
  constexpr std::size_t kMax = 2000;
  if (text.size() > kMax) text = text.substr(text.size() - kMax);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::string CandidateHandle::read_line(int timeout_ms, const char* phase) {
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const std::size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    struct pollfd pfd{};
    pfd.fd = stdout_fd_;
    pfd.events = POLLIN;
    const int left = remaining_ms(deadline);
    if (left == 0) {
      throw CandidateFailure(LegalityVerdict{
          Legality::kTimeout, std::string(phase) + " exceeded " + std::to_string(timeout_ms) +
                                  " ms for component " + component_id_});
    }
    const int rc = ::poll(&pfd, 1, left);
    if (rc == 0) {
      throw CandidateFailure(LegalityVerdict{
          Legality::kTimeout, std::string(phase) + " exceeded " + std::to_string(timeout_ms) +
                                  " ms for component " + component_id_});
    }
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw CandidateFailure(
          LegalityVerdict{Legality::kRuntimeFailure, "poll() failed: " + std::string(strerror(errno))});
    }
    char chunk[4096];
    const ssize_t n = ::read(stdout_fd_, chunk, sizeof(chunk));
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
      continue;
    }
    if (n == 0) {
      throw CandidateFailure(LegalityVerdict{
          Legality::kRuntimeFailure, "candidate closed its output during " + std::string(phase) +
                                         (stderr_tail().empty() ? "" : ": " + stderr_tail())});
    }
    if (errno == EINTR) continue;
    throw CandidateFailure(
        LegalityVerdict{Legality::kRuntimeFailure, "read() failed: " + std::string(strerror(errno))});
  }
}

nlohmann::json CandidateHandle::call(const nlohmann::json& request) {
  if (!ready_) {
    throw CandidateFailure(LegalityVerdict{Legality::kRuntimeFailure, "candidate not ready"});
  }
  const std::string payload = request.dump() + "\n";
  std::size_t written = 0;
  while (written < payload.size()) {
    const ssize_t n = ::write(stdin_fd_, payload.data() + written, payload.size() - written);
    if (n > 0) {
      written += static_cast<std::size_t>(n);
      continue;
    }
    if (errno == EINTR) continue;
    const std::string tail = stderr_tail();
    kill_child();
    throw CandidateFailure(LegalityVerdict{
        Legality::kRuntimeFailure,
        "candidate pipe closed" + (tail.empty() ? std::string() : ": " + tail)});
  }

  std::string line;
  try {
    line = read_line(call_timeout_ms_, "call");
  } catch (const CandidateFailure&) {
    kill_child();  // every call failure kills the child
    throw;
  }

  nlohmann::json response = nlohmann::json::parse(line, nullptr, false);
  if (response.is_discarded() || !response.is_object()) {
    kill_child();
    throw CandidateFailure(
        LegalityVerdict{Legality::kRuntimeFailure, "malformed candidate response: " + line});
  }
  if (response.contains("error")) {
    const std::string message = response["error"].is_string()
                                    ? response["error"].get<std::string>()
                                    : response["error"].dump();
    kill_child();
    throw CandidateFailure(LegalityVerdict{Legality::kRuntimeFailure, message});
  }
  return response;
}

void CandidateHandle::kill_child() {
  ready_ = false;
  if (stdin_fd_ >= 0) {
    ::close(stdin_fd_);
    stdin_fd_ = -1;
  }
  if (stdout_fd_ >= 0) {
    ::close(stdout_fd_);
    stdout_fd_ = -1;
  }
  if (!reaped_ && pid_ > 0) {
    ::kill(static_cast<pid_t>(pid_), SIGKILL);
    reap_child();
  }
}

void CandidateHandle::reap_child() {
  if (reaped_ || pid_ <= 0) return;
  int status = 0;
  pid_t rc;
  do {
    rc = ::waitpid(static_cast<pid_t>(pid_), &status, 0);
  } while (rc < 0 && errno == EINTR);
  reaped_ = true;
  g_live_children.fetch_sub(1);
}

void CandidateHandle::shutdown() {
  if (reaped_) return;
  if (ready_ && stdin_fd_ >= 0) {
    const std::string bye = nlohmann::json{{"op", "bye"}}.dump() + "\n";
    ssize_t ignored = ::write(stdin_fd_, bye.data(), bye.size());
    static_cast<void>(ignored);
    ::close(stdin_fd_);
    stdin_fd_ = -1;
    const auto deadline = Clock::now() + std::chrono::milliseconds(1000);
    while (Clock::now() < deadline) {
      int status = 0;
      const pid_t rc = ::waitpid(static_cast<pid_t>(pid_), &status, WNOHANG);
      if (rc == static_cast<pid_t>(pid_)) {
        reaped_ = true;
        g_live_children.fetch_sub(1);
        ready_ = false;
        if (stdout_fd_ >= 0) {
          ::close(stdout_fd_);
          stdout_fd_ = -1;
        }
        return;
      }
      if (rc < 0 && errno != EINTR) break;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  kill_child();
}

double require_finite_number(const nlohmann::json& response, const std::string& field) {
  if (!response.contains(field)) {
    throw CandidateFailure(
        LegalityVerdict{Legality::kRuntimeFailure, "response missing field '" + field + "'"});
  }
  const nlohmann::json& value = response[field];
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    if (text == "nan" || text == "inf" || text == "-inf") {
      throw CandidateFailure(
          LegalityVerdict{Legality::kNonFinite, "candidate returned " + text + " for '" + field + "'"});
    }
    throw CandidateFailure(LegalityVerdict{
        Legality::kRuntimeFailure, "field '" + field + "' is not numeric: " + text});
  }
  if (!value.is_number()) {
    throw CandidateFailure(LegalityVerdict{
        Legality::kRuntimeFailure, "field '" + field + "' is not numeric: " + value.dump()});
  }
  const double v = value.get<double>();
  if (!std::isfinite(v)) {
    throw CandidateFailure(
        LegalityVerdict{Legality::kNonFinite, "candidate returned non-finite '" + field + "'"});
  }
  return v;
}

long require_integer(const nlohmann::json& response, const std::string& field) {
  if (!response.contains(field)) {
    throw CandidateFailure(
        LegalityVerdict{Legality::kRuntimeFailure, "response missing field '" + field + "'"});
  }
  const nlohmann::json& value = response[field];
  if (!value.is_number_integer()) {
    throw CandidateFailure(LegalityVerdict{
        Legality::kRuntimeFailure, "field '" + field + "' is not an integer: " + value.dump()});
  }
  return value.get<long>();
}

}  // namespace evostage
