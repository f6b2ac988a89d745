#include "wear/learners/forest.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>

#include <omp.h>

namespace wear {

namespace {

void check_params(const FeatureMatrix& features, const Vector& targets, const ForestParams& params) {
  require_finite_targets(targets, features.rows());
  if (params.n_trees < 1) throw InvalidParameter("forest needs n_trees >= 1");
  const Index mtry = params.resolved_mtry(features.cols());
  if (mtry < 1 || mtry > features.cols()) throw InvalidParameter("forest needs 1 <= mtry <= d");
}

TreeModel grow_member(const FeatureMatrix& features, const Vector& targets, const ForestParams& params,
                      const RngStream& rng, Index t) {
  auto engine = rng.substream(t).engine();
  const Index n = features.rows();
  std::vector<Index> sample(n);
  if (params.bootstrap) {
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (auto& s : sample) s = pick(engine);
  } else {
    std::iota(sample.begin(), sample.end(), Index{0});
  }
  return detail::grow_tree(features, targets, sample, params.tree_params(),
                           params.resolved_mtry(features.cols()), &engine);
}

}  // namespace

ForestModel::ForestModel(std::vector<TreeModel> trees, Index dimension)
    : trees_(std::move(trees)), dim_(dimension) {
  if (trees_.empty()) throw InvalidInput("forest needs at least one tree");
}

double ForestModel::predict_row(const FeatureMatrix& features, Index row) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict_row(features, row);
  return sum / static_cast<double>(trees_.size());
}

Vector ForestModel::predict(const FeatureMatrix& features) const {
  check_dimension(features);
  constexpr std::ptrdiff_t kBlock = 256;
  const auto n = static_cast<std::ptrdiff_t>(features.rows());
  const std::ptrdiff_t blocks = (n + kBlock - 1) / kBlock;
  Vector out = Vector::Zero(n);
  // Trees outer, rows inner keeps one tree hot in cache per block; each row
  // still adds its trees in index order.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
    for (const auto& tree : trees_) {
      for (std::ptrdiff_t i = lo; i < hi; ++i) out[i] += tree.predict_row(features, static_cast<Index>(i));
    }
    for (std::ptrdiff_t i = lo; i < hi; ++i) out[i] /= static_cast<double>(trees_.size());
  }
  return out;
}

Vector ForestModel::predict_reference(const FeatureMatrix& features) const {
  check_dimension(features);
  Vector out(static_cast<Eigen::Index>(features.rows()));
  for (Index i = 0; i < features.rows(); ++i) out[static_cast<Eigen::Index>(i)] = predict_row(features, i);
  return out;
}

std::shared_ptr<const ForestModel> fit_forest(const FeatureMatrix& features, const Vector& targets,
                                              const ForestParams& params, const RngStream& rng) {
  check_params(features, targets, params);
  const auto n_trees = static_cast<std::ptrdiff_t>(params.n_trees);
  std::vector<std::optional<TreeModel>> grown(params.n_trees);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n_trees; ++t) {
    try {
      grown[static_cast<Index>(t)].emplace(grow_member(features, targets, params, rng, static_cast<Index>(t)));
    } catch (...) {
#pragma omp critical(wear_forest_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TreeModel> trees;
  trees.reserve(params.n_trees);
  for (auto& t : grown) trees.push_back(std::move(*t));
  return std::make_shared<const ForestModel>(std::move(trees), features.cols());
}

std::shared_ptr<const ForestModel> fit_forest_reference(const FeatureMatrix& features, const Vector& targets,
                                                        const ForestParams& params, const RngStream& rng) {
  check_params(features, targets, params);
  std::vector<TreeModel> trees;
  trees.reserve(params.n_trees);
  for (Index t = 0; t < params.n_trees; ++t) trees.push_back(grow_member(features, targets, params, rng, t));
  return std::make_shared<const ForestModel>(std::move(trees), features.cols());
}

}  // namespace wear
