#pragma once

#include <string>

#include "vex/config.hpp"
#include "vex/embedlab.hpp"

namespace vex {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kWorkersEnvVar = "VEXLAB_WORKERS";

/// Worker count from the environment (default 1, clamped to >= 1).
int worker_count();

struct RunOutput {
  std::string csv;
  std::string json;
  std::string csv_path;   // empty when the config requests no file output
  std::string json_path;
};

/// Executes the experiment described by the config (norm | embedding_sweep |
/// proof_check | counterexample). Reads coefficient input files if referenced;
/// does not write anything. Throws ConfigError / NumericError / IoError.
RunOutput run_experiment(const Config& cfg);

/// run_experiment plus persistence to `output.csv` / `output.json`.
RunOutput run_and_persist(const Config& cfg);

/// Builds and validates everything the experiment would use, without running
/// any norm computation. Throws on invalid configs.
void validate_config(const Config& cfg);

/// kind in {ratio_vs_J, term_decomposition, profile}. `record_path` points at
/// the JSON summary, the results CSV, or a GridFunction file respectively.
std::string emit_plot_data(const std::string& record_path, const std::string& kind);

}  // namespace vex
