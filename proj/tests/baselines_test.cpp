#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "wear/baselines.hpp"
#include "wear/simulate.hpp"
#include "wear/wear.hpp"

namespace wear {
namespace {

using testing::normal_matrix;
using testing::normal_vector;

MultiAnnotatedDataset linear_experts(Index n, const std::vector<double>& variances, unsigned seed) {
  const Matrix x = normal_matrix(n, 3, seed);
  const Vector y = x * Eigen::Vector3d(1.0, -2.0, 0.5) + normal_vector(n, 1.0, seed + 1) + Vector::Constant(static_cast<Eigen::Index>(n), 3.0);
  return testing::noisy_copies(x, y, variances, seed + 2);
}

TEST(ArithmeticMean, SingleExpertRegressesItsColumn) {
  const auto data = linear_experts(400, {2.0}, 1);
  const auto parts = split(data, SplitSpec{0.6, 0.2, 0.2, 1});
  const auto am = fit_arithmetic_mean(parts, LearnerSpec::linear(), RngStream(1, 0));
  const auto direct = fit_ols(parts.train.features, parts.train.annotations.expert(0));
  EXPECT_LT((am->predict(parts.test.features) - direct->predict(parts.test.features)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ArithmeticMean, MatchesEqualWeightWear) {
  const auto data = linear_experts(600, {1.0, 4.0, 9.0}, 2);
  const auto parts = split(data, SplitSpec{0.6, 0.2, 0.2, 2});
  for (const auto& learner : {LearnerSpec::linear(), LearnerSpec::forest(ForestParams{.n_trees = 15}), LearnerSpec::tree()}) {
    const RngStream rng(4, 1);
    ExpertiseProfile equal;
    equal.expert_mses = {1, 1, 1};
    equal.weights = optimal_weights(equal.expert_mses);
    const auto w = fit_final_stage(parts.train, equal, learner, rng);
    const auto am = fit_arithmetic_mean(parts, learner, rng);
    EXPECT_EQ(w.predict(parts.test.features), am->predict(parts.test.features)) << learner.name;
  }
}

TEST(ArithmeticMean, ExperimentFourPenalty) {
  // Oracle: 9 + (sum_j sigma_j^2 / J^2) (d + 1) / n_train.
  const auto spec = GeneratorSpec::experiment(4, 20000, 3);
  const auto parts = split(generate(spec), SplitSpec{0.5, 0.25, 0.25, 3});
  const auto am = fit_arithmetic_mean(parts, LearnerSpec::linear(), RngStream(1, 0));
  double sum = 0.0;
  for (double v : spec.expert_variances) sum += v;
  const double oracle = 9.0 + sum / 16.0 * 7.0 / 10000.0;
  EXPECT_NEAR(oracle, 9.55, 0.01);
  EXPECT_NEAR(mean_squared_error(am->predict(parts.test.features), parts.test.labels()), oracle, 0.5);
}

TEST(GoldStandard, NoiselessLinearRecovery) {
  const Matrix x = normal_matrix(100, 2, 5);
  const Vector y = x * Eigen::Vector2d(3.0, -1.0) + Vector::Constant(100, 2.0);
  const MultiAnnotatedDataset data(FeatureMatrix(x), AnnotationMatrix(Matrix::Zero(100, 2)), y);
  const auto parts = split(data, SplitSpec{0.6, 0.2, 0.2, 5});
  const auto gold = fit_gold_standard(parts, LearnerSpec::linear(), RngStream(1, 0));
  EXPECT_LT((gold->predict(parts.test.features) - parts.test.labels()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GoldStandard, EqualsWearWhenExpertsAreTruth) {
  const Matrix x = normal_matrix(500, 4, 6);
  const Vector y = x.col(0).array().square() + normal_vector(500, 1.0, 7).array();
  Matrix a(500, 3);
  a.colwise() = y;
  const MultiAnnotatedDataset data(FeatureMatrix(x), AnnotationMatrix(a), y);
  const auto parts = split(data, SplitSpec{0.6, 0.2, 0.2, 6});
  for (const auto& learner : {LearnerSpec::linear(), LearnerSpec::forest(ForestParams{.n_trees = 15})}) {
    const RngStream rng(8, 8);
    const auto w = fit_wear(parts, learner, learner, rng);
    const auto gold = fit_gold_standard(parts, learner, rng);
    EXPECT_EQ(w.predict(parts.test.features), gold->predict(parts.test.features)) << learner.name;
  }
}

TEST(GoldStandard, NeedsLabels) {
  const MultiAnnotatedDataset data(FeatureMatrix(normal_matrix(40, 2, 1)), AnnotationMatrix(normal_matrix(40, 2, 2)));
  const auto parts = split(data, SplitSpec{0.6, 0.2, 0.2, 1});
  EXPECT_THROW(fit_gold_standard(parts, LearnerSpec::linear(), RngStream(1, 0)), InvalidInput);
}

TEST(Raykar, SingleAnnotator) {
  const auto data = linear_experts(300, {2.0}, 9);
  const auto state = fit_raykar(data);
  const auto ols = fit_ols(data.features, data.annotations.expert(0));
  EXPECT_NEAR(state.intercept, ols->intercept(), 1e-10);
  EXPECT_LT((state.coefficients - ols->coefficients()).cwiseAbs().maxCoeff(), 1e-10);
  const double mse = mean_squared_error(ols->predict(data.features), data.annotations.expert(0));
  EXPECT_NEAR(state.variances()[0], mse, 1e-10 * mse);
}

TEST(Raykar, IdenticalAnnotators) {
  auto base = linear_experts(300, {3.0}, 10);
  Matrix a(300, 3);
  a.colwise() = base.annotations.expert(0);
  const MultiAnnotatedDataset data(base.features, AnnotationMatrix(a), base.true_labels);
  const auto state = fit_raykar(data);
  EXPECT_DOUBLE_EQ(state.precisions[0], state.precisions[1]);
  EXPECT_DOUBLE_EQ(state.precisions[1], state.precisions[2]);
  const auto ols = fit_ols(data.features, a.col(0));
  EXPECT_LT((state.coefficients - ols->coefficients()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Raykar, ExperimentThreeRecoversVariances) {
  const auto spec = GeneratorSpec::experiment(3, 20000, 11);
  const auto parts = split(generate(spec), SplitSpec{0.5, 0.25, 0.25, 11});
  const auto state = fit_raykar(parts);
  EXPECT_TRUE(state.converged);
  EXPECT_NEAR(mean_squared_error(state.model()->predict(parts.test.features), parts.test.labels()), 9.0, 0.4);
  // The crowd model treats label noise as annotator noise, so each 1/lambda_j
  // estimates Var(Y_j | x) = 9 + sigma_j^2.
  const auto target = spec.conditional_expert_variances();
  const auto v = state.variances();
  double dev = 0.0;
  for (Index j = 0; j < 4; ++j) dev += std::abs(v[j] - target[j]) / 4.0;
  EXPECT_LT(dev, 0.5);
}

TEST(RaykarProperty, LikelihoodNeverDecreases) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto data = linear_experts(500, {0.5, 4.0, 30.0, 200.0}, 20 + seed);
    const auto state = fit_raykar(data, RaykarOptions{.max_iters = 200, .tol = 1e-14});
    ASSERT_GE(state.likelihood_trace.size(), 2u);
    for (Index k = 1; k < state.likelihood_trace.size(); ++k) {
      const double prev = state.likelihood_trace[k - 1];
      EXPECT_GE(state.likelihood_trace[k], prev - 1e-10 * std::abs(prev)) << "seed " << seed << " iter " << k;
    }
    EXPECT_NEAR(raykar_log_likelihood(data, *state.model(), state.variances()), state.log_likelihood,
                1e-9 * std::abs(state.log_likelihood));
  }
}

TEST(RaykarProperty, FixedPointIsStationary) {
  const auto data = linear_experts(800, {1.0, 5.0, 20.0}, 30);
  const auto state = fit_raykar(data, RaykarOptions{.max_iters = 2000, .tol = 1e-15});
  const Matrix& y = data.annotations.values();
  Vector precision(3);
  for (Index j = 0; j < 3; ++j) precision[static_cast<Eigen::Index>(j)] = state.precisions[j];
  const Vector consensus = (y * precision) / precision.sum();
  const auto beta = fit_ols(data.features, consensus);
  EXPECT_NEAR(beta->intercept(), state.intercept, 1e-6);
  EXPECT_LT((beta->coefficients() - state.coefficients).cwiseAbs().maxCoeff(), 1e-6);
  const Vector fitted = state.model()->predict(data.features);
  for (Index j = 0; j < 3; ++j) {
    const double mse = (y.col(static_cast<Eigen::Index>(j)) - fitted).squaredNorm() / 800.0;
    EXPECT_NEAR(state.variances()[j], mse, 1e-6 * mse);
  }
}

TEST(RaykarProperty, HomoskedasticPrecisionsAgree) {
  const auto data = linear_experts(10000, {4.0, 4.0, 4.0, 4.0}, 40);
  const auto state = fit_raykar(data);
  const auto [lo, hi] = std::minmax_element(state.precisions.begin(), state.precisions.end());
  EXPECT_LT((*hi - *lo) / *lo, 0.1);
}

}  // namespace
}  // namespace wear
