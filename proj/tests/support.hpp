#pragma once

#include <random>
#include <vector>

#include "wear/core.hpp"

namespace wear::testing {

// Standard-normal matrix drawn with a plain engine, independent of RngStream.
inline Matrix normal_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(engine);
  return m;
}

inline Vector normal_vector(Index n, double sd, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, sd);
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = normal(engine);
  return v;
}

inline double sample_variance(const Vector& v) {
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

inline double sample_mean(const Vector& v) { return v.mean(); }

// Rows of `labels` plus J noisy copies with the given variances.
inline MultiAnnotatedDataset noisy_copies(const Matrix& x, const Vector& labels, const std::vector<double>& variances,
                                          unsigned seed) {
  Matrix a(labels.size(), static_cast<Eigen::Index>(variances.size()));
  for (Index j = 0; j < variances.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) =
        labels + normal_vector(static_cast<Index>(labels.size()), std::sqrt(variances[j]), seed + 17 * static_cast<unsigned>(j));
  }
  return MultiAnnotatedDataset(FeatureMatrix(x), AnnotationMatrix(a), labels);
}

}  // namespace wear::testing

#include "wear/learners/learner.hpp"
#include "wear/simulate.hpp"

namespace wear::testing {

// The generator's E[Y | x], wrapped as a fitted model.
class MeanFunctionModel final : public FittedModel {
 public:
  MeanFunctionModel(MeanFunction f, Index dimension) : f_(f), dim_(dimension) {}
  Vector predict(const FeatureMatrix& features) const override { return mean_function(f_, features); }
  Index dimension() const override { return dim_; }

 private:
  MeanFunction f_;
  Index dim_;
};

}  // namespace wear::testing
