#pragma once

#include <memory>

#include <Eigen/QR>

#include "wear/learners/learner.hpp"

namespace wear {

/// y = intercept + x' coefficients. Produced by least squares, the lasso and
/// the crowd EM baseline.
class LinearModel final : public FittedModel {
 public:
  LinearModel(double intercept, Vector coefficients)
      : intercept_(intercept), coefficients_(std::move(coefficients)) {}

  Vector predict(const FeatureMatrix& features) const override;
  Index dimension() const override { return static_cast<Index>(coefficients_.size()); }

  double intercept() const { return intercept_; }
  const Vector& coefficients() const { return coefficients_; }

 private:
  double intercept_;
  Vector coefficients_;
};

/// Column-pivoted Householder QR of the design [1 | X], factored once and
/// reused for any number of right-hand sides.
class LeastSquares {
 public:
  /// Throws InvalidInput unless n > d + 1, SingularDesign if [1 | X] is rank
  /// deficient.
  explicit LeastSquares(const FeatureMatrix& features);

  LinearModel solve(const Vector& targets) const;

 private:
  Index rows_;
  Index dim_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

std::shared_ptr<const LinearModel> fit_ols(const FeatureMatrix& features, const Vector& targets);

}  // namespace wear
