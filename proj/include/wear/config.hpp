#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wear/baselines.hpp"
#include "wear/core.hpp"
#include "wear/eval.hpp"
#include "wear/ingest.hpp"
#include "wear/learners/learner.hpp"
#include "wear/simulate.hpp"

namespace wear {

/// A real dataset on disk plus the simulated experts drawn over its target.
struct CsvSource {
  CsvSchema schema;
  std::vector<double> overlay_variances;
};

/// What `weight_deviation` is measured against. `conditional` uses the
/// generator's Var(Y_j | x) = noise_sd^2 + sigma_j^2, the quantity the
/// validation MSE estimates; `nominal` uses sigma_j^2 alone. CSV sources
/// always use the overlay variances, since Var(Y | x) is unknown there.
enum class VarianceReference { conditional, nominal };

/// Fully resolved description of one benchmark run.
struct ExperimentConfig {
  std::variant<GeneratorSpec, CsvSource> data;
  SplitSpec split;  // the seed field is ignored; splits are seeded per replication
  std::vector<Framework> frameworks;
  std::vector<LearnerSpec> learners;
  std::optional<LearnerSpec> wear_expert_learner;  // defaults to each final learner
  RaykarOptions raykar;
  Index replications = 100;
  std::uint64_t master_seed = 1;
  std::string output_dir = "wear-output";
  Index parallelism = 1;
  VarianceReference variance_reference = VarianceReference::conditional;

  bool uses_generator() const { return std::holds_alternative<GeneratorSpec>(data); }
  const std::vector<double>& expert_variances() const;
  /// Reference variances for the weight-deviation metric.
  std::vector<double> reference_variances() const;
};

/// Parses and validates a JSON config. Unknown keys, type errors and value
/// errors are all collected; each diagnostic starts with "line N:" pointing
/// into `text`. Throws ConfigError when any diagnostic was produced.
ExperimentConfig parse_config(std::string_view text);

/// Semantic checks that also apply after command-line overrides. Returns
/// diagnostics (empty when valid).
std::vector<std::string> check_config(const ExperimentConfig& config);

/// JSON text of the fully resolved config; parsing it yields the same config.
std::string echo_config(const ExperimentConfig& config);

struct NamedConfig {
  std::string name;
  ExperimentConfig config;
};

/// Built-in presets: "experiment1".."experiment4" (full-scale protocol:
/// 10000/5000/85000 rows, 100 replications) and "table1-desk" (all four
/// experiments at 2000/1000/5000 rows, 20 replications).
std::vector<NamedConfig> preset(std::string_view name);

}  // namespace wear
