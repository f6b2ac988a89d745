#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wear/eval.hpp"

namespace wear {
namespace {

ReplicationReport report(Framework f, const std::string& learner, LearnerKind kind, Index r, double mse,
                         std::optional<double> dev = std::nullopt) {
  ReplicationReport out;
  out.framework = f;
  out.learner = learner;
  out.learner_kind = kind;
  out.replication_id = r;
  out.test_mse = mse;
  out.weight_deviation = dev;
  return out;
}

TEST(TestMse, ExactAndShifted) {
  const Eigen::Vector3d y(1.0, -2.0, 5.0);
  EXPECT_EQ(test_mse(y, y), 0.0);
  EXPECT_DOUBLE_EQ(test_mse(y.array() + 3.0, y), 9.0);
}

TEST(TestMse, PairOrderInvariant) {
  Vector p(5), y(5);
  p << 1, 2, 3, 4, 5;
  y << 2, 2, 1, 7, 5;
  const double base = test_mse(p, y);
  std::vector<int> idx{0, 1, 2, 3, 4};
  while (std::next_permutation(idx.begin(), idx.end())) {
    Vector pp(5), yy(5);
    for (int k = 0; k < 5; ++k) {
      pp[k] = p[idx[static_cast<std::size_t>(k)]];
      yy[k] = y[idx[static_cast<std::size_t>(k)]];
    }
    EXPECT_NEAR(test_mse(pp, yy), base, 1e-15);
  }
}

TEST(VarianceDeviation, Examples) {
  const std::vector<double> v{4, 4.41, 4.84, 5.0625};
  EXPECT_EQ(variance_deviation(v, v), 0.0);
  const std::vector<double> fives{5, 5, 5, 5};
  EXPECT_NEAR(variance_deviation(fives, v), (1 + 0.59 + 0.16 + 0.0625) / 4.0, 1e-12);
  EXPECT_NEAR(variance_deviation(fives, v), 0.453125, 1e-12);
  EXPECT_THROW(variance_deviation(fives, std::vector<double>{1}), InvalidInput);
}

TEST(Aggregate, SingleReplication) {
  const std::vector<ReplicationReport> r{report(Framework::wear, "linear", LearnerKind::linear, 0, 9.5, 0.2)};
  const auto out = aggregate(r);
  ASSERT_EQ(out.cells.size(), 1u);
  EXPECT_EQ(out.cells[0].mean_mse, 9.5);
  EXPECT_EQ(out.cells[0].standard_error_mse, 0.0);
  EXPECT_TRUE(out.cells[0].single_replication);
  EXPECT_EQ(*out.cells[0].mean_weight_deviation, 0.2);
}

TEST(Aggregate, TwoReplications) {
  const double a = 9.25, b = 10.5;
  const std::vector<ReplicationReport> r{report(Framework::gold_standard, "tree", LearnerKind::tree, 0, a),
                                         report(Framework::gold_standard, "tree", LearnerKind::tree, 1, b)};
  const auto cell = aggregate(r).cells.at(0);
  EXPECT_DOUBLE_EQ(cell.mean_mse, (a + b) / 2);
  EXPECT_DOUBLE_EQ(cell.standard_error_mse, std::abs(a - b) / 2);
  EXPECT_FALSE(cell.mean_weight_deviation.has_value());
}

TEST(Aggregate, OrderingAndPermutationInvariance) {
  std::vector<ReplicationReport> r;
  std::mt19937_64 engine(1);
  std::uniform_real_distribution<double> u(5.0, 15.0);
  const std::pair<std::string, LearnerKind> learners[] = {
      {"lasso", LearnerKind::lasso}, {"tree", LearnerKind::tree}, {"forest", LearnerKind::forest}, {"linear", LearnerKind::linear}};
  for (auto f : {Framework::gold_standard, Framework::arithmetic_mean, Framework::wear}) {
    for (const auto& [name, kind] : learners) {
      for (Index k = 0; k < 7; ++k) {
        r.push_back(report(f, name, kind, k, u(engine), f == Framework::wear ? std::optional<double>(u(engine)) : std::nullopt));
      }
    }
  }
  const auto base = aggregate(r);
  ASSERT_EQ(base.cells.size(), 12u);
  EXPECT_EQ(base.cells[0].framework, Framework::wear);
  EXPECT_EQ(base.cells[0].learner, "linear");
  EXPECT_EQ(base.cells[1].learner, "forest");
  EXPECT_EQ(base.cells[2].learner, "tree");
  EXPECT_EQ(base.cells[3].learner, "lasso");
  EXPECT_EQ(base.cells[4].framework, Framework::arithmetic_mean);
  EXPECT_EQ(base.cells[11].framework, Framework::gold_standard);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(r.begin(), r.end(), engine);
    const auto again = aggregate(r);
    for (Index c = 0; c < base.cells.size(); ++c) {
      EXPECT_EQ(again.cells[c].mean_mse, base.cells[c].mean_mse);
      EXPECT_EQ(again.cells[c].standard_error_mse, base.cells[c].standard_error_mse);
      EXPECT_EQ(again.cells[c].mean_weight_deviation, base.cells[c].mean_weight_deviation);
    }
  }
}

TEST(AggregateProperty, MatchesWelford) {
  std::mt19937_64 engine(2);
  std::normal_distribution<double> normal(9.0, 2.0);
  for (Index n : {2u, 3u, 10u, 100u, 1000u}) {
    std::vector<ReplicationReport> r;
    double mean = 0.0, m2 = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double x = normal(engine);
      r.push_back(report(Framework::wear, "linear", LearnerKind::linear, k, x));
      const double delta = x - mean;
      mean += delta / static_cast<double>(k + 1);
      m2 += delta * (x - mean);
    }
    const double se = std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    const auto cell = aggregate(r).cells.at(0);
    EXPECT_NEAR(cell.mean_mse, mean, 1e-10);
    EXPECT_NEAR(cell.standard_error_mse, se, 1e-10);
  }
}

TEST(Aggregate, RejectsDuplicatesAndMixedDeviation) {
  std::vector<ReplicationReport> dup{report(Framework::wear, "linear", LearnerKind::linear, 0, 1.0),
                                     report(Framework::wear, "linear", LearnerKind::linear, 0, 2.0)};
  EXPECT_THROW(aggregate(dup), InvalidInput);
  std::vector<ReplicationReport> mixed{report(Framework::wear, "linear", LearnerKind::linear, 0, 1.0, 0.5),
                                       report(Framework::wear, "linear", LearnerKind::linear, 1, 2.0)};
  EXPECT_THROW(aggregate(mixed), InvalidInput);
}

TEST(Framework, Names) {
  for (auto f : {Framework::wear, Framework::raykar, Framework::arithmetic_mean, Framework::gold_standard})
    EXPECT_EQ(framework_from_string(to_string(f)), f);
  EXPECT_THROW(framework_from_string("majority"), InvalidParameter);
}

}  // namespace
}  // namespace wear
