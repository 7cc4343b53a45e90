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

#include "evostage/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evostage/errors.hpp"
#include "evostage/persist.hpp"

namespace evostage {
namespace {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

json record_to_json(const EvaluationRecord& record) {
  json out{{"evaluation_index", record.evaluation_index},
           {"generation", record.generation},
           {"operator", std::string(to_string(record.scheduled_operator))},
           {"seeded_by_fallback", record.seeded_by_fallback},
           {"legality", std::string(to_string(record.legality))},
           {"legality_detail", record.legality_detail},
           {"individual_id", record.individual_id}};
  out["score"] = record.score.has_value() ? json(*record.score) : json(nullptr);
  out["best_so_far"] = record.best_so_far.has_value() ? json(*record.best_so_far) : json(nullptr);
  return out;
}

EvaluationRecord record_from_json(const json& value) {
  EvaluationRecord record;
  record.evaluation_index = value.at("evaluation_index").get<int>();
  record.generation = value.at("generation").get<int>();
  record.scheduled_operator = operator_kind_from_string(value.at("operator").get<std::string>());
  record.seeded_by_fallback = value.at("seeded_by_fallback").get<bool>();
  record.legality = legality_from_string(value.at("legality").get<std::string>());
  record.legality_detail = value.at("legality_detail").get<std::string>();
  record.individual_id = value.at("individual_id").get<std::string>();
  if (!value.at("score").is_null()) record.score = value.at("score").get<double>();
  if (!value.at("best_so_far").is_null()) {
    record.best_so_far = value.at("best_so_far").get<double>();
  }
  return record;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write report file '" + path.string() + "'");
  file << content;
}

}  // namespace

json report_to_json(const RunReport& report) {
  json records = json::array();
  for (const auto& record : report.records) records.push_back(record_to_json(record));
  json out{{"schema_version", kSchemaVersion},
           {"config", config_to_json(report.config)},
           {"records", std::move(records)},
           {"aborted", report.aborted},
           {"abort_reason", report.abort_reason}};
  out["best_individual"] = report.best_individual.has_value()
                               ? individual_to_json(*report.best_individual)
                               : json(nullptr);
  return out;
}

RunReport report_from_json(const json& value) {
  RunReport report;
  report.config = parse_config(value.at("config").dump());
  for (const auto& record : value.at("records")) {
    report.records.push_back(record_from_json(record));
  }
  if (!value.at("best_individual").is_null()) {
    report.best_individual = individual_from_json(value.at("best_individual"));
  }
  report.aborted = value.at("aborted").get<bool>();
  report.abort_reason = value.at("abort_reason").get<std::string>();
  return report;
}

std::string convergence_csv(const RunReport& report) {
  std::string csv = "evaluation_index,operator,legality,score,best_so_far\n";
  for (const auto& record : report.records) {
    csv += std::to_string(record.evaluation_index);
    csv += ',';
    csv += to_string(record.scheduled_operator);
    csv += ',';
    csv += to_string(record.legality);
    csv += ',';
    if (record.score.has_value()) csv += format_double(*record.score);
    csv += ',';
    if (record.best_so_far.has_value()) csv += format_double(*record.best_so_far);
    csv += '\n';
  }
  return csv;
}

void emit_report(const RunReport& report, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);

  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_file(dir / "convergence.csv", convergence_csv(report));

  json summary{{"schema_version", kSchemaVersion},
               {"evaluations", report.records.size()},
               {"pass_rate", report.pass_rate()},
               {"operator_counts", report.operator_counts()},
               {"aborted", report.aborted},
               {"abort_reason", report.abort_reason}};
  summary["best_score"] = report.best_individual.has_value() && report.best_individual->score
                              ? json(*report.best_individual->score)
                              : json(nullptr);
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  if (report.best_individual.has_value()) {
    write_file(dir / "best_individual.json",
               individual_to_json(*report.best_individual).dump(2) + "\n");
  }
}

RunReport load_report(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot read report file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return report_from_json(parse_versioned_json(buffer.str(), "report file"));
}

}  // namespace evostage
