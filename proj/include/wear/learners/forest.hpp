#pragma once

#include <memory>
#include <vector>

#include "wear/learners/tree.hpp"

namespace wear {

/// Bagged regression trees; the prediction is the mean over trees.
class ForestModel final : public FittedModel {
 public:
  ForestModel(std::vector<TreeModel> trees, Index dimension);

  /// Rows are scored in parallel with OpenMP. Each row sums its trees in
  /// index order, so the result does not depend on the thread count.
  Vector predict(const FeatureMatrix& features) const override;
  /// Serial reference for `predict`; bit-identical output.
  Vector predict_reference(const FeatureMatrix& features) const;

  Index dimension() const override { return dim_; }
  const std::vector<TreeModel>& trees() const { return trees_; }

 private:
  double predict_row(const FeatureMatrix& features, Index row) const;

  std::vector<TreeModel> trees_;
  Index dim_;
};

/// Random forest: tree t is grown from its own substream `rng.substream(t)`
/// (bootstrap resample, then mtry features per split), so trees can be built
/// by any number of OpenMP threads with identical results.
std::shared_ptr<const ForestModel> fit_forest(const FeatureMatrix& features, const Vector& targets,
                                              const ForestParams& params, const RngStream& rng);

/// Single-threaded reference for `fit_forest`, kept for equivalence tests
/// and the serial-vs-parallel benchmark.
std::shared_ptr<const ForestModel> fit_forest_reference(const FeatureMatrix& features, const Vector& targets,
                                                        const ForestParams& params, const RngStream& rng);

}  // namespace wear
