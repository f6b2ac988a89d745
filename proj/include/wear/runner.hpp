#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wear/config.hpp"
#include "wear/eval.hpp"

namespace wear {

/// Substream ids of a replication stream RngStream(master_seed, r).
namespace replication_streams {
inline constexpr std::uint64_t kData = 0;
inline constexpr std::uint64_t kSplit = 1;
inline constexpr std::uint64_t kFit = 2;
}  // namespace replication_streams

/// Produces the multi-annotated dataset of each replication. A CSV source is
/// read once; every replication draws a fresh expert overlay over it.
class DataSource {
 public:
  explicit DataSource(const ExperimentConfig& config);

  MultiAnnotatedDataset dataset(Index replication) const;
  Partitions partitions(Index replication) const;

 private:
  const ExperimentConfig* config_;
  std::optional<MultiAnnotatedDataset> base_;
};

struct RunFailure {
  std::string framework;
  std::string learner;
  Index replication = 0;
  std::string message;
};

struct ReplicationOutcome {
  std::vector<ReplicationReport> reports;
  std::optional<RunFailure> failure;  // reports hold whatever finished before it
};

/// Every requested (framework, learner) fit of replication `r`, in config
/// order. Crowd EM is fitted once and reported under the learner "linear".
ReplicationOutcome run_replication(const ExperimentConfig& config, const DataSource& source, Index r);

struct RunResult {
  std::vector<ReplicationReport> reports;  // replication order
  AggregateReport summary;
  std::optional<RunFailure> failure;  // earliest failing replication
};

/// Runs all replications on `config.parallelism` workers and merges the
/// results in replication order, so the output does not depend on the
/// worker count.
RunResult run_experiment(const ExperimentConfig& config);

/// Writes replications.csv, summary.csv, summary.json and config.echo.json
/// into `dir`, creating it if needed.
void write_outputs(const ExperimentConfig& config, const RunResult& result, const std::filesystem::path& dir);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

}  // namespace wear
