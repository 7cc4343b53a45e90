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

#ifndef EVOSTAGE_LEGALITY_HPP_
#define EVOSTAGE_LEGALITY_HPP_

#include <span>
#include <string>
#include <string_view>

namespace evostage {

// Outcome class of one candidate evaluation. Unevaluated is the placeholder
// for assembled-but-not-yet-run individuals; every other tag is terminal.
enum class Legality {
  kUnevaluated,
  kPass,
  kIllegalCode,
  kRuntimeFailure,
  kTimeout,
  kNonFinite,
  kTargetMissed,
};

struct LegalityVerdict {
  Legality tag = Legality::kPass;
  std::string detail;

  bool passed() const { return tag == Legality::kPass; }
};

std::string_view to_string(Legality tag);
Legality legality_from_string(std::string_view name);

struct PassRate {
  double value = 0.0;
  // Set when the verdict list was empty and the 0.0 above is a convention,
  // not a measurement.
  bool empty_input = false;
};

PassRate pass_rate(std::span<const LegalityVerdict> verdicts);

}  // namespace evostage

#endif  // EVOSTAGE_LEGALITY_HPP_
