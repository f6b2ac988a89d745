#include "wear/learners/linear.hpp"

#include <algorithm>
#include <sstream>

namespace wear {

namespace {

Matrix design_matrix(const FeatureMatrix& features) {
  Matrix design(features.values().rows(), features.values().cols() + 1);
  design.col(0).setOnes();
  design.rightCols(features.values().cols()) = features.values();
  return design;
}

}  // namespace

Vector LinearModel::predict(const FeatureMatrix& features) const {
  check_dimension(features);
  Vector out = features.values() * coefficients_;
  out.array() += intercept_;
  return out;
}

LeastSquares::LeastSquares(const FeatureMatrix& features)
    : rows_(features.rows()), dim_(features.cols()) {
  if (rows_ <= dim_ + 1) {
    std::ostringstream msg;
    msg << "least squares needs n > d + 1 (n=" << rows_ << ", d=" << dim_ << ")";
    throw InvalidInput(msg.str());
  }
  qr_.compute(design_matrix(features));
  const auto rank = static_cast<Index>(qr_.rank());
  if (rank < dim_ + 1) {
    // Pivoted QR moves the dependent columns past the numerical rank.
    std::vector<int> collinear;
    const auto& perm = qr_.colsPermutation().indices();
    for (Index k = rank; k < dim_ + 1; ++k) collinear.push_back(perm[static_cast<Eigen::Index>(k)] - 1);
    std::sort(collinear.begin(), collinear.end());
    std::ostringstream msg;
    msg << "singular design: rank " << rank << " < " << dim_ + 1 << "; collinear columns:";
    for (int c : collinear) {
      if (c < 0) msg << " intercept";
      else msg << " x" << c;
    }
    throw SingularDesign(msg.str(), std::move(collinear));
  }
}

LinearModel LeastSquares::solve(const Vector& targets) const {
  require_finite_targets(targets, rows_);
  const Vector beta = qr_.solve(targets);
  return LinearModel(beta[0], beta.tail(static_cast<Eigen::Index>(dim_)));
}

std::shared_ptr<const LinearModel> fit_ols(const FeatureMatrix& features, const Vector& targets) {
  return std::make_shared<const LinearModel>(LeastSquares(features).solve(targets));
}

}  // namespace wear
