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

#ifndef EVOSTAGE_ERRORS_HPP_
#define EVOSTAGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include "evostage/legality.hpp"

namespace evostage {

// Bad run configuration / environment (missing interpreter, unknown config
// key, invalid invariant).  Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LLM transport failure (HTTP error, missing fixture).  Aborts the run with a
// partial report; maps to CLI exit code 3.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation-domain setup failure (unreadable instance file, bad benchmark
// table).  Maps to CLI exit code 4.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A candidate process misbehaved.  Carries the legality verdict so the
// evaluation can record it; never escapes the evaluation layer.
class CandidateFailure : public std::runtime_error {
 public:
  explicit CandidateFailure(LegalityVerdict verdict)
      : std::runtime_error(std::string(to_string(verdict.tag)) + ": " + verdict.detail),
        verdict_(std::move(verdict)) {}

  const LegalityVerdict& verdict() const { return verdict_; }

 private:
  LegalityVerdict verdict_;
};

}  // namespace evostage

#endif  // EVOSTAGE_ERRORS_HPP_
