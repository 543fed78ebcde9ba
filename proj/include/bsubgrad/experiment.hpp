#pragma once

// Experiment configuration and the run / sweep / certify commands.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsubgrad/bounds.hpp"
#include "bsubgrad/oracle.hpp"
#include "bsubgrad/solver.hpp"

namespace bsubgrad {

inline constexpr const char* kVersion = "bsubgrad 1.0.0";

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string problem = "ex1";
  /// Defaults to 1000, or to the anchor file's dimension when one is given.
  std::optional<std::size_t> n;
  double radius = 10.0;
  double gamma = 0.5;
  std::size_t m = 50;
  std::string anchors;  // path; empty means sampled
  std::uint64_t anchor_seed = 1;
  std::string prox = "euclidean";
  std::string oracle = "exact";
  std::string noise = "random";
  std::string magnitude = "worst";
  std::optional<std::string> step_rule;
  std::optional<std::uint64_t> iters;
  std::uint64_t seed = 0;
  std::uint64_t log_every = 100;
  std::string lipschitz_mode = "analytic";
  std::optional<std::string> out;
  std::optional<std::string> summary;
  bool timing = false;
  // sweep grids, comma-separated decimals / integers
  std::string alphas;
  std::string deltas;
  std::string seeds;
  std::optional<unsigned> workers;
};

/// Applies one `key = value` setting. Keys match the CLI flag names; '_' and
/// '-' are interchangeable. Throws ConfigError.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; '#' starts a comment.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// Per-field validation shared by run and sweep.
void validate(const ExperimentConfig& cfg);

struct RunResult {
  bool bounds_ok = true;
  std::string csv_path;
  std::string summary_path;
};

/// Executes one run and writes its CSV and JSON summary.
RunResult cmd_run(const ExperimentConfig& cfg);

/// One run per (model value, seed) cell plus an exact baseline.
RunResult cmd_sweep(const ExperimentConfig& cfg);

/// Re-verifies a persisted summary; writes a pass/fail table to `report`.
/// Returns true iff every check passes. Throws std::runtime_error for
/// unreadable or malformed files.
bool cmd_certify(const std::string& summary_path, std::ostream& report);

struct ProblemDescription {
  std::string name;
  std::string summary;
};
std::vector<ProblemDescription> list_problems();

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Worker count for sweeps: requested (or hardware concurrency), capped by
/// BSUBGRAD_WORKERS when set.
unsigned sweep_workers(std::optional<unsigned> requested);

}  // namespace bsubgrad
