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

#ifndef EVOSTAGE_BO_TABULAR_HPP_
#define EVOSTAGE_BO_TABULAR_HPP_

#include <string>
#include <vector>

namespace evostage::bo {

// A discrete benchmark: every queryable configuration is a table row.
struct TabularBenchmark {
  std::vector<std::string> parameter_names;
  std::vector<std::string> ids;                   // one per row
  std::vector<std::vector<double>> parameters;    // one row per configuration
  std::vector<double> objectives;                 // minimization values
  double best_value = 0.0;

  int row_count() const { return static_cast<int>(objectives.size()); }
};

// Parses "id,<param columns...>,objective" comma-separated text.  Throws
// DomainError naming the offending row/column on any schema violation
// (missing columns, duplicate configurations, non-numeric fields).
TabularBenchmark parse_tabular(const std::string& text);
TabularBenchmark load_tabular(const std::string& path);

}  // namespace evostage::bo

#endif  // EVOSTAGE_BO_TABULAR_HPP_
