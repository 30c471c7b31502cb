#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/csvio.hpp"

namespace clab::experiments {

struct PrecondCheck {
  std::string name;
  bool ok;
};

struct RunResult {
  std::string csv_path;
  std::string log_path;
  std::size_t rows_written = 0;
  double wall_ms = 0.0;
  std::vector<PrecondCheck> preconditions;
};

std::vector<std::string> experiment_names();

// Schema check only: resolves the experiment and touches every required key.
void validate_config(const config::ExperimentConfig& config);

// Executes the experiment, writes the CSV to config.output_path and appends a
// JSON-lines record (inputs, version, seed, precondition status, wall time)
// to <output_path>.runlog.jsonl.
RunResult run_experiment(const config::ExperimentConfig& config);

}  // namespace clab::experiments
