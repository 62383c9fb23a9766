#pragma once

#include <string>
#include <vector>

#include "klab/report.hpp"
#include "klab/scenario.hpp"

namespace klab {

struct RunOptions {
  std::string out_override;      // replaces the scenario's output prefix when nonempty
  double tolerance_scale = 1.0;  // multiplies check tolerances
};

struct ScenarioResult {
  std::string name;
  std::string task;
  std::string model;
  uint64_t seed = 0;
  std::vector<CheckReport> reports;
  std::vector<std::string> artifacts;
  bool pass = true;
  std::string error;  // nonempty when the task aborted before finishing
};

/// Dispatches the scenario to its task, collects check reports and writes
/// artifacts (report JSON, trajectory CSV) under the output prefix.
ScenarioResult run_scenario(const Scenario& sc, const RunOptions& opts = {});
ScenarioResult run_scenario_file(const std::string& path, const RunOptions& opts = {});

/// Deterministic report serialization: no timestamps, no absolute paths,
/// fixed key order.
std::string result_json(const ScenarioResult& r);
std::string result_table(const ScenarioResult& r);

struct SuiteSummary {
  std::vector<ScenarioResult> results;
  bool pass = true;
  std::string warning;
};

/// Runs every *.json scenario in the directory (sorted by name). Failures
/// mark the suite failed but do not stop the run.
SuiteSummary run_suite(const std::string& dir, const RunOptions& opts = {});
std::string suite_json(const SuiteSummary& s);
std::string suite_table(const SuiteSummary& s);

}  // namespace klab
