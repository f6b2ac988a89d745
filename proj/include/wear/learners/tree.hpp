#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wear/learners/learner.hpp"

namespace wear {

struct TreeNode {
  static constexpr int kLeaf = -1;

  int feature = kLeaf;     // split feature, or kLeaf
  double threshold = 0.0;  // rows with x[feature] <= threshold go left
  int left = -1;
  int right = -1;
  double value = 0.0;      // mean of the training targets that reached the node
  Index count = 0;
  Index depth = 0;

  bool is_leaf() const { return feature == kLeaf; }
};

/// Binary regression tree stored as a flat node array; node 0 is the root.
class TreeModel final : public FittedModel {
 public:
  TreeModel(std::vector<TreeNode> nodes, Index dimension);

  Vector predict(const FeatureMatrix& features) const override;
  Index dimension() const override { return dim_; }

  /// Index of the leaf that row `row` of `features` falls into.
  Index leaf_of(const FeatureMatrix& features, Index row) const;
  double predict_row(const FeatureMatrix& features, Index row) const {
    return nodes_[leaf_of(features, row)].value;
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  Index leaves() const;
  Index depth() const;

 private:
  std::vector<TreeNode> nodes_;
  Index dim_;
};

/// CART regression tree with greedy variance-reduction splits.
///
/// A node is split only if it has at least `min_split` rows, lies above
/// `max_depth`, and its best split (each child >= `min_leaf` rows) reduces
/// the squared error by at least `complexity` times the root squared error.
/// Candidate thresholds are midpoints between consecutive distinct values;
/// ties go to the lowest feature index, then the smallest threshold.
std::shared_ptr<const TreeModel> fit_tree(const FeatureMatrix& features, const Vector& targets,
                                          const TreeParams& params);

namespace detail {

/// Grows one tree on the multiset of rows `sample` (duplicates allowed, as in
/// a bootstrap resample). With `mtry` < d and an engine, each split considers
/// `mtry` features drawn without replacement.
TreeModel grow_tree(const FeatureMatrix& features, const Vector& targets, std::span<const Index> sample,
                    const TreeParams& params, Index mtry, RngStream::Engine* engine);

}  // namespace detail

}  // namespace wear
