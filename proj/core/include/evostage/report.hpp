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

#ifndef EVOSTAGE_REPORT_HPP_
#define EVOSTAGE_REPORT_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "evostage/evolution.hpp"

namespace evostage {

// Canonical serialization of a run: key-sorted JSON, wall-clock timings
// excluded, so identical runs serialize to identical bytes.
nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& value);

// Convergence series as CSV text with header
// "evaluation_index,operator,legality,score,best_so_far"; doubles printed
// with %.17g; score/best cells are empty until the first passing record.
std::string convergence_csv(const RunReport& report);

// Writes report.json, summary.json, convergence.csv, and (when a best
// individual exists) best_individual.json under out_dir, creating it if
// needed.  Re-emitting the same report rewrites every file byte-identically.
void emit_report(const RunReport& report, const std::string& out_dir);

// Loads a report.json previously produced by emit_report.
RunReport load_report(const std::string& path);

}  // namespace evostage

#endif  // EVOSTAGE_REPORT_HPP_
