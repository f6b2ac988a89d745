#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wear/core.hpp"

namespace wear {

/// A trained regression function. Implementations are immutable after
/// construction; `predict` is reentrant.
class FittedModel {
 public:
  virtual ~FittedModel() = default;

  /// One prediction per row of `features`. Throws InvalidInput when the
  /// column count differs from the training dimension.
  virtual Vector predict(const FeatureMatrix& features) const = 0;
  virtual Index dimension() const = 0;

 protected:
  void check_dimension(const FeatureMatrix& features) const;
};

using ModelPtr = std::shared_ptr<const FittedModel>;

enum class LearnerKind { linear, lasso, tree, forest };

std::string_view to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(std::string_view name);

struct LinearParams {};

struct LassoParams {
  Index folds = 10;
  Index lambda_grid_size = 100;
  double lambda_min_ratio = 1e-4;
  // Sweeps stop when the largest standardized coefficient change is below this.
  double tolerance = 1e-7;
  Index max_sweeps = 100000;
};

struct TreeParams {
  Index min_split = 20;
  Index min_leaf = 7;
  double complexity = 0.01;
  Index max_depth = 30;
};

struct ForestParams {
  Index n_trees = 500;
  Index mtry = 0;  // 0 = max(1, floor(d / 3))
  Index min_leaf = 5;
  Index min_split = 0;  // 0 = 2 * min_leaf
  double complexity = 0.0;
  Index max_depth = 10000;
  bool bootstrap = true;

  Index resolved_mtry(Index dimension) const;
  TreeParams tree_params() const;
};

using LearnerParams = std::variant<LinearParams, LassoParams, TreeParams, ForestParams>;

/// Names a learner family and its hyperparameters.
struct LearnerSpec {
  std::string name;
  LearnerParams params;

  LearnerKind kind() const { return static_cast<LearnerKind>(params.index()); }

  static LearnerSpec linear() { return {"linear", LinearParams{}}; }
  static LearnerSpec lasso(LassoParams p = {}) { return {"lasso", p}; }
  static LearnerSpec tree(TreeParams p = {}) { return {"tree", p}; }
  static LearnerSpec forest(ForestParams p = {}) { return {"forest", p}; }
};

/// Fits the learner on (features, targets). Deterministic given the stream.
ModelPtr fit(const LearnerSpec& learner, const FeatureMatrix& features, const Vector& targets,
             const RngStream& rng);

/// K disjoint folds covering 0..n-1, assigned by a random permutation.
std::vector<std::vector<Index>> make_folds(Index n, Index folds, const RngStream& rng);

/// Pooled K-fold held-out mean squared error of `learner`.
double cross_validated_mse(const LearnerSpec& learner, const FeatureMatrix& features,
                           const Vector& targets, Index folds, const RngStream& rng);

/// Mean squared difference between two equally long vectors.
double mean_squared_error(const Vector& predictions, const Vector& targets);

void require_finite_targets(const Vector& targets, Index rows);

}  // namespace wear
