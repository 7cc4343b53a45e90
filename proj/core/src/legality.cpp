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

#include "evostage/legality.hpp"

#include <stdexcept>

namespace evostage {

std::string_view to_string(Legality tag) {
  switch (tag) {
    case Legality::kUnevaluated:
      return "unevaluated";
    case Legality::kPass:
      return "pass";
    case Legality::kIllegalCode:
      return "illegal_code";
    case Legality::kRuntimeFailure:
      return "runtime_failure";
    case Legality::kTimeout:
      return "timeout";
    case Legality::kNonFinite:
      return "non_finite";
    case Legality::kTargetMissed:
      return "target_missed";
  }
  return "unknown";
}

Legality legality_from_string(std::string_view name) {
  if (name == "unevaluated") return Legality::kUnevaluated;
  if (name == "pass") return Legality::kPass;
  if (name == "illegal_code") return Legality::kIllegalCode;
  if (name == "runtime_failure") return Legality::kRuntimeFailure;
  if (name == "timeout") return Legality::kTimeout;
  if (name == "non_finite") return Legality::kNonFinite;
  if (name == "target_missed") return Legality::kTargetMissed;
  throw std::invalid_argument("unknown legality tag: " + std::string(name));
}

PassRate pass_rate(std::span<const LegalityVerdict> verdicts) {
  if (verdicts.empty()) return PassRate{0.0, true};
  std::size_t passed = 0;
  for (const auto& v : verdicts) {
    if (v.passed()) ++passed;
  }
  return PassRate{static_cast<double>(passed) / static_cast<double>(verdicts.size()), false};
}

}  // namespace evostage
