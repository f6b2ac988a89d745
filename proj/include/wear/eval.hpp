#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wear/core.hpp"
#include "wear/learners/learner.hpp"

namespace wear {

/// Comparison frameworks, in report row order.
enum class Framework { wear, raykar, arithmetic_mean, gold_standard };

std::string_view to_string(Framework f);
Framework framework_from_string(std::string_view name);

struct ReplicationReport {
  Framework framework = Framework::wear;
  std::string learner;
  LearnerKind learner_kind = LearnerKind::linear;
  Index replication_id = 0;
  double test_mse = 0.0;
  // Only frameworks that estimate expert variances (WEAR: validation MSEs,
  // crowd EM: inverse precisions) fill these.
  std::optional<std::vector<double>> estimated_variances;
  std::optional<std::vector<double>> weights;
  std::optional<double> weight_deviation;
};

struct AggregateCell {
  Framework framework = Framework::wear;
  std::string learner;
  LearnerKind learner_kind = LearnerKind::linear;
  Index replications = 0;
  double mean_mse = 0.0;
  double standard_error_mse = 0.0;
  std::optional<double> mean_weight_deviation;
  std::optional<double> standard_error_weight_deviation;
  bool single_replication = false;  // standard errors reported as 0
};

struct AggregateReport {
  std::vector<AggregateCell> cells;

  const AggregateCell* find(Framework framework, std::string_view learner) const;
};

/// Mean squared error of predictions against the true labels.
double test_mse(const Vector& predictions, const Vector& true_labels);

/// (1/J) sum_j |estimated_j - reference_j|.
double variance_deviation(std::span<const double> estimated, std::span<const double> reference);

/// Mean and standard error (sample sd / sqrt(R)) per (framework, learner)
/// cell. Cells are ordered by framework, then learner family (linear,
/// forest, tree, lasso), then learner name, regardless of input order.
/// Throws InvalidInput on a repeated (framework, learner, replication) or a
/// cell where only some replications carry a weight deviation.
AggregateReport aggregate(std::span<const ReplicationReport> reports);

}  // namespace wear
