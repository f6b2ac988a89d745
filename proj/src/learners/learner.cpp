#include "wear/learners/learner.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wear/learners/forest.hpp"
#include "wear/learners/lasso.hpp"
#include "wear/learners/linear.hpp"
#include "wear/learners/tree.hpp"

namespace wear {

void FittedModel::check_dimension(const FeatureMatrix& features) const {
  if (features.cols() != dimension()) {
    std::ostringstream msg;
    msg << "model expects " << dimension() << " features, got " << features.cols();
    throw InvalidInput(msg.str());
  }
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::linear: return "linear";
    case LearnerKind::lasso: return "lasso";
    case LearnerKind::tree: return "tree";
    case LearnerKind::forest: return "forest";
  }
  return "unknown";
}

LearnerKind learner_kind_from_string(std::string_view name) {
  for (auto kind : {LearnerKind::linear, LearnerKind::lasso, LearnerKind::tree, LearnerKind::forest}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidParameter("unknown learner kind '" + std::string(name) + "'");
}

Index ForestParams::resolved_mtry(Index dimension) const {
  if (mtry != 0) return mtry;
  return std::max<Index>(1, dimension / 3);
}

TreeParams ForestParams::tree_params() const {
  return TreeParams{min_split != 0 ? min_split : 2 * min_leaf, min_leaf, complexity, max_depth};
}

void require_finite_targets(const Vector& targets, Index rows) {
  if (static_cast<Index>(targets.size()) != rows) {
    std::ostringstream msg;
    msg << "target length " << targets.size() << " does not match " << rows << " rows";
    throw InvalidInput(msg.str());
  }
  if (!targets.allFinite()) throw InvalidData("targets contain NaN or Inf");
}

ModelPtr fit(const LearnerSpec& learner, const FeatureMatrix& features, const Vector& targets,
             const RngStream& rng) {
  return std::visit(
      [&](const auto& p) -> ModelPtr {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearParams>) {
          return fit_ols(features, targets);
        } else if constexpr (std::is_same_v<P, LassoParams>) {
          return fit_lasso(features, targets, p, rng).model;
        } else if constexpr (std::is_same_v<P, TreeParams>) {
          return fit_tree(features, targets, p);
        } else {
          return fit_forest(features, targets, p, rng);
        }
      },
      learner.params);
}

std::vector<std::vector<Index>> make_folds(Index n, Index folds, const RngStream& rng) {
  if (folds < 2 || folds > n) {
    std::ostringstream msg;
    msg << "need 2 <= folds <= n (folds=" << folds << ", n=" << n << ")";
    throw InvalidParameter(msg.str());
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto engine = rng.engine();
  for (Index i = n; i > 1; --i) {
    std::uniform_int_distribution<Index> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(engine)]);
  }
  std::vector<std::vector<Index>> out(folds);
  for (Index k = 0; k < n; ++k) out[k % folds].push_back(order[k]);
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

double mean_squared_error(const Vector& predictions, const Vector& targets) {
  if (predictions.size() != targets.size()) throw InvalidInput("length mismatch in mean squared error");
  if (predictions.size() == 0) throw InvalidInput("mean squared error of an empty vector");
  return (predictions - targets).squaredNorm() / static_cast<double>(targets.size());
}

double cross_validated_mse(const LearnerSpec& learner, const FeatureMatrix& features, const Vector& targets,
                           Index folds, const RngStream& rng) {
  require_finite_targets(targets, features.rows());
  const Index n = features.rows();
  const auto assignment = make_folds(n, folds, rng.substream(0));
  std::vector<char> held(n);
  double sse = 0.0;
  for (Index k = 0; k < assignment.size(); ++k) {
    const auto& fold = assignment[k];
    std::fill(held.begin(), held.end(), 0);
    for (Index i : fold) held[i] = 1;
    std::vector<Index> train;
    for (Index i = 0; i < n; ++i) {
      if (!held[i]) train.push_back(i);
    }
    Vector y(static_cast<Eigen::Index>(train.size()));
    for (Index i = 0; i < train.size(); ++i) y[static_cast<Eigen::Index>(i)] = targets[static_cast<Eigen::Index>(train[i])];
    const ModelPtr model = fit(learner, features.select_rows(train), y, rng.substream(k + 1));
    const Vector pred = model->predict(features.select_rows(fold));
    for (Index i = 0; i < fold.size(); ++i) {
      const double e = pred[static_cast<Eigen::Index>(i)] - targets[static_cast<Eigen::Index>(fold[i])];
      sse += e * e;
    }
  }
  return sse / static_cast<double>(n);
}

}  // namespace wear
