#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "wear/simulate.hpp"

namespace wear {
namespace {

// Independent evaluation of the mean function used by the generator.
double oracle_mean(const FeatureMatrix& x, Index i, bool quadratic) {
  const double c[] = {2, 1, 5, 0.5, 4, 3};
  const bool squared[] = {true, false, false, false, true, true};
  double total = 0.0;
  for (Index j = 0; j < 6; ++j) {
    const double v = x(i, j);
    total += c[j] * (quadratic && squared[j] ? v * v : v);
  }
  return total;
}

TEST(Generate, NoiselessExperimentThree) {
  auto spec = GeneratorSpec::experiment(3, 500, 1);
  spec.noise_sd = 0.0;
  spec.expert_variances = {1e-30, 1e-30, 1e-30, 1e-30};
  const auto data = generate(spec);
  for (Index i = 0; i < data.rows(); ++i) {
    const double m = oracle_mean(data.features, i, false);
    EXPECT_NEAR(data.labels()[static_cast<Eigen::Index>(i)], m, 1e-12);
    for (Index j = 0; j < 4; ++j) EXPECT_NEAR(data.annotations(i, j), m, 1e-6);
  }
}

TEST(Generate, QuadraticMeanFunction) {
  auto spec = GeneratorSpec::experiment(1, 50, 2);
  spec.noise_sd = 0.0;
  const auto data = generate(spec);
  for (Index i = 0; i < data.rows(); ++i) {
    EXPECT_NEAR(data.labels()[static_cast<Eigen::Index>(i)], oracle_mean(data.features, i, true), 1e-12);
  }
}

TEST(Generate, ExperimentFourExpertNoise) {
  const auto spec = GeneratorSpec::experiment(4, 100000, 3);
  const double expected[] = {4, 100, 2500, 10000};
  for (Index j = 0; j < 4; ++j) EXPECT_EQ(spec.expert_variances[j], expected[j]);
  const auto data = generate(spec);
  for (Index j = 0; j < 4; ++j) {
    const Vector d = data.annotations.expert(j) - data.labels();
    EXPECT_NEAR(testing::sample_variance(d), expected[j], 0.05 * expected[j]) << "j=" << j;
  }
}

TEST(Generate, ExperimentOneLabelNoise) {
  auto spec = GeneratorSpec::experiment(1, 100000, 4);
  const auto data = generate(spec);
  const Vector eps = data.labels() - mean_function(MeanFunction::quadratic, data.features);
  EXPECT_NEAR(testing::sample_variance(eps), 9.0, 0.45);
}

TEST(Generate, ExperimentRoster) {
  const double low[] = {4, 4.41, 4.84, 5.0625};
  const double high[] = {4, 100, 2500, 10000};
  for (int k = 1; k <= 4; ++k) {
    const auto spec = GeneratorSpec::experiment(k, 10, 0);
    EXPECT_EQ(spec.mean_function, k <= 2 ? MeanFunction::quadratic : MeanFunction::linear);
    EXPECT_EQ(spec.dimension, 6u);
    EXPECT_EQ(spec.noise_sd, 3.0);
    const double* v = (k == 1 || k == 3) ? low : high;
    for (Index j = 0; j < 4; ++j) EXPECT_EQ(spec.expert_variances[j], v[j]);
    const auto cond = spec.conditional_expert_variances();
    for (Index j = 0; j < 4; ++j) EXPECT_EQ(cond[j], 9.0 + v[j]);
  }
  EXPECT_THROW(GeneratorSpec::experiment(5, 10, 0), InvalidParameter);
}

TEST(Generate, Deterministic) {
  const auto spec = GeneratorSpec::experiment(2, 1000, 9);
  const auto a = generate(spec);
  const auto b = generate(spec);
  EXPECT_EQ(a.features.values(), b.features.values());
  EXPECT_EQ(a.annotations.values(), b.annotations.values());
  EXPECT_EQ(a.labels(), b.labels());
  auto other = spec;
  other.seed = 10;
  EXPECT_NE(generate(other).labels(), a.labels());
}

TEST(Generate, UniformCovariates) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::custom;
  spec.n = 2000;
  spec.dimension = 8;
  spec.covariates = {CovariateDistribution::Kind::uniform, -1.0, 2.0};
  spec.mean_function = MeanFunction::linear;
  spec.expert_variances = {1.0};
  const auto data = generate(spec);
  EXPECT_EQ(data.dimension(), 8u);
  EXPECT_GE(data.features.values().minCoeff(), -1.0);
  EXPECT_LT(data.features.values().maxCoeff(), 2.0);
}

TEST(Generate, RejectsBadSpecs) {
  auto spec = GeneratorSpec::experiment(1, 10, 0);
  spec.expert_variances = {};
  EXPECT_THROW(generate(spec), InvalidParameter);
  spec = GeneratorSpec::experiment(1, 10, 0);
  spec.noise_sd = -1;
  EXPECT_THROW(generate(spec), InvalidParameter);
  spec = GeneratorSpec::experiment(1, 10, 0);
  spec.dimension = 3;
  EXPECT_THROW(generate(spec), InvalidParameter);
}

TEST(GenerateProperty, UnbiasedAndIndependentExperts) {
  const Index n = 100000;
  const auto spec = GeneratorSpec::experiment(2, n, 12);
  const auto data = generate(spec);
  const double rn = std::sqrt(static_cast<double>(n));
  std::vector<Vector> noise;
  for (Index j = 0; j < 4; ++j) {
    noise.push_back(data.annotations.expert(j) - data.labels());
    EXPECT_LT(std::abs(noise.back().mean()), 3.0 * std::sqrt(spec.expert_variances[j]) / rn) << "j=" << j;
  }
  for (Index a = 0; a < 4; ++a) {
    for (Index b = a + 1; b < 4; ++b) {
      const Vector da = noise[a].array() - noise[a].mean();
      const Vector db = noise[b].array() - noise[b].mean();
      const double corr = da.dot(db) / (da.norm() * db.norm());
      EXPECT_LT(std::abs(corr), 3.0 / rn) << a << "," << b;
    }
  }
}

TEST(Overlay, TinyVariancesReproduceLabels) {
  const Matrix x = testing::normal_matrix(100, 2, 1);
  const Vector y = testing::normal_vector(100, 5.0, 2);
  const MultiAnnotatedDataset data(FeatureMatrix(x), AnnotationMatrix::none(100), y);
  const auto out = overlay_experts(data, ExpertOverlaySpec{{1e-300, 1e-300}, 3});
  for (Index j = 0; j < 2; ++j) EXPECT_LT((out.annotations.expert(j) - y).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(out.features.values(), x);
  EXPECT_EQ(out.labels(), y);
}

TEST(Overlay, DatasetOneVariances) {
  const Index n = 45730;
  const MultiAnnotatedDataset data(FeatureMatrix(testing::normal_matrix(n, 1, 4)), AnnotationMatrix::none(n),
                                   testing::normal_vector(n, 10.0, 5));
  const std::vector<double> v{1, 4, 25, 225};
  const auto out = overlay_experts(data, ExpertOverlaySpec{v, 6});
  for (Index j = 0; j < 4; ++j) {
    const Vector d = out.annotations.expert(j) - data.labels();
    EXPECT_NEAR(testing::sample_variance(d), v[j], 0.1 * v[j]);
  }
}

TEST(Overlay, NeedsLabels) {
  const MultiAnnotatedDataset data(FeatureMatrix(testing::normal_matrix(10, 1, 1)), AnnotationMatrix::none(10));
  EXPECT_THROW(overlay_experts(data, ExpertOverlaySpec{{1.0}, 0}), InvalidInput);
}

TEST(Names, RoundTrip) {
  for (auto k : {GeneratorKind::experiment1, GeneratorKind::experiment2, GeneratorKind::experiment3,
                 GeneratorKind::experiment4, GeneratorKind::custom})
    EXPECT_EQ(generator_kind_from_string(to_string(k)), k);
  for (auto f : {MeanFunction::linear, MeanFunction::quadratic}) EXPECT_EQ(mean_function_from_string(to_string(f)), f);
}

}  // namespace
}  // namespace wear
