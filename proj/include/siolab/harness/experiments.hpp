#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "siolab/harness/config.hpp"

namespace siolab::harness {

// One pass/fail rule of an experiment summary, tied to an acceptance
// criterion id ("AC-3", ...).
struct Rule {
  std::string criterion;
  std::string name;
  std::string comparison;  // "<=", ">=", "true"
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;

  nlohmann::json to_json() const;
  static Rule from_json(const nlohmann::json& j);
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  std::vector<Rule> summary;
  nlohmann::json plots = nlohmann::json::object();  // plot kind -> data
  nlohmann::json provenance = nlohmann::json::object();

  bool passed() const;
  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
  std::string rows_csv() const;
};

// Runs one experiment. Numeric shortfalls are recorded as failed rules;
// configuration problems throw SpecError.
ExperimentReport run(const ExperimentConfig& cfg);

// Writes report.json, rows.csv and every available plot (<kind>.svg) into
// `dir`; returns the written paths.
std::vector<std::string> write_artifacts(const ExperimentReport& report, const std::string& dir);

// kind: convergence | modulus_fit | field_heatmap. Error("empty") when the
// report carries no data for that kind.
std::string plot(const ExperimentReport& report, const std::string& kind);

// SHA-1 of "blob <size>\0<content>", as printed by `git hash-object`.
std::string git_blob_hash(const std::string& content);

}  // namespace siolab::harness
