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

#include "evostage/bo/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "evostage/errors.hpp"

namespace evostage::bo {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& field, int row_number, const std::string& column) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(field, &consumed);
    if (consumed != field.size() || !std::isfinite(value)) throw std::invalid_argument(field);
    return value;
  } catch (const std::exception&) {
    throw DomainError("row " + std::to_string(row_number) + ": column '" + column +
                      "' is not a finite number: '" + field + "'");
  }
}

}  // namespace

TabularBenchmark parse_tabular(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty benchmark file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv(line);
  if (header.size() < 3) {
    throw DomainError("header needs at least id, one parameter, and objective columns");
  }
  if (header.front() != "id") throw DomainError("header missing column 'id'");
  if (header.back() != "objective") throw DomainError("header missing column 'objective'");

  TabularBenchmark benchmark;
  benchmark.parameter_names.assign(header.begin() + 1, header.end() - 1);

  std::set<std::vector<double>> seen;
  int row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw DomainError("row " + std::to_string(row_number) + ": expected " +
                        std::to_string(header.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    std::vector<double> params;
    params.reserve(benchmark.parameter_names.size());
    for (std::size_t c = 1; c + 1 < fields.size(); ++c) {
      params.push_back(parse_number(fields[c], row_number, header[c]));
    }
    if (!seen.insert(params).second) {
      throw DomainError("row " + std::to_string(row_number) + ": duplicate configuration");
    }
    benchmark.ids.push_back(fields.front());
    benchmark.parameters.push_back(std::move(params));
    benchmark.objectives.push_back(parse_number(fields.back(), row_number, "objective"));
  }
  if (benchmark.objectives.empty()) throw DomainError("benchmark has no data rows");
  benchmark.best_value =
      *std::min_element(benchmark.objectives.begin(), benchmark.objectives.end());
  return benchmark;
}

TabularBenchmark load_tabular(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open benchmark file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_tabular(buffer.str());
}

}  // namespace evostage::bo
