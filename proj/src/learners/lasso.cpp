#include "wear/learners/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wear {

namespace {

struct Standardized {
  Matrix z;             // centred, unit (1/n) variance columns
  Vector centre;
  Vector scale;         // 0 marks a constant column, which stays out of the model
  double target_mean = 0.0;
  Vector target;        // centred targets
};

Standardized standardize(const FeatureMatrix& features, const Vector& targets) {
  const auto n = static_cast<double>(features.rows());
  Standardized s;
  s.centre = features.values().colwise().mean().transpose();
  s.z = features.values().rowwise() - s.centre.transpose();
  s.scale.resize(s.z.cols());
  for (Eigen::Index j = 0; j < s.z.cols(); ++j) {
    const double sd = std::sqrt(s.z.col(j).squaredNorm() / n);
    s.scale[j] = sd > 1e-12 * (1.0 + std::abs(s.centre[j])) ? sd : 0.0;
    if (s.scale[j] > 0.0) s.z.col(j) /= s.scale[j];
    else s.z.col(j).setZero();
  }
  s.target_mean = targets.mean();
  s.target = targets.array() - s.target_mean;
  return s;
}

double objective(const Vector& residual, const Vector& beta, double lambda) {
  const auto n = static_cast<double>(residual.size());
  return residual.squaredNorm() / (2.0 * n) + lambda * beta.lpNorm<1>();
}

double soft_threshold(double value, double lambda) {
  if (value > lambda) return value - lambda;
  if (value < -lambda) return value + lambda;
  return 0.0;
}

// Cyclic coordinate descent at one lambda. `beta` is a warm start and
// `residual` must equal target - z * beta on entry; both are updated in place.
void coordinate_descent(const Standardized& s, double lambda, const LassoParams& params, Vector& beta,
                        Vector& residual, LassoTrace* trace) {
  const auto n = static_cast<double>(s.z.rows());
  for (Index sweep = 0; sweep < params.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < s.z.cols(); ++j) {
      if (s.scale[j] == 0.0) continue;
      const double old = beta[j];
      // Columns have unit (1/n) variance, so the coordinate minimizer is a
      // soft threshold of the partial-residual correlation.
      const double rho = s.z.col(j).dot(residual) / n + old;
      const double updated = soft_threshold(rho, lambda);
      const double delta = updated - old;
      if (delta != 0.0) {
        residual.noalias() -= delta * s.z.col(j);
        beta[j] = updated;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (trace) trace->objective.push_back(objective(residual, beta, lambda));
    if (max_change < params.tolerance) return;
  }
}

std::shared_ptr<const LinearModel> to_original_scale(const Standardized& s, const Vector& beta) {
  Vector coef = Vector::Zero(beta.size());
  double intercept = s.target_mean;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (s.scale[j] == 0.0) continue;
    coef[j] = beta[j] / s.scale[j];
    intercept -= s.centre[j] * coef[j];
  }
  return std::make_shared<const LinearModel>(intercept, std::move(coef));
}

double lambda_max_of(const Standardized& s) {
  const auto n = static_cast<double>(s.z.rows());
  return (s.z.transpose() * s.target).cwiseAbs().maxCoeff() / n;
}

std::vector<double> lambda_grid(double lambda_max, const LassoParams& params) {
  const Index k = std::max<Index>(params.lambda_grid_size, 1);
  // A constant or covariate-free target gives lambda_max = 0; keep the grid
  // positive so the path bookkeeping stays uniform.
  const double top = lambda_max > 0.0 ? lambda_max : std::numeric_limits<double>::min() * 1e10;
  std::vector<double> grid(k);
  if (k == 1) {
    grid[0] = top;
    return grid;
  }
  const double log_ratio = std::log(params.lambda_min_ratio);
  for (Index i = 0; i < k; ++i) {
    grid[i] = top * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(k - 1));
  }
  return grid;
}

void check_inputs(const FeatureMatrix& features, const Vector& targets) {
  require_finite_targets(targets, features.rows());
}

}  // namespace

double lasso_lambda_max(const FeatureMatrix& features, const Vector& targets) {
  check_inputs(features, targets);
  return lambda_max_of(standardize(features, targets));
}

std::shared_ptr<const LinearModel> fit_lasso_fixed(const FeatureMatrix& features, const Vector& targets,
                                                   double lambda, const LassoParams& params,
                                                   LassoTrace* trace) {
  check_inputs(features, targets);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lasso lambda must be >= 0");
  const Standardized s = standardize(features, targets);
  Vector beta = Vector::Zero(s.z.cols());
  Vector residual = s.target;
  if (trace) trace->objective.push_back(objective(residual, beta, lambda));
  coordinate_descent(s, lambda, params, beta, residual, trace);
  return to_original_scale(s, beta);
}

LassoFit fit_lasso(const FeatureMatrix& features, const Vector& targets, const LassoParams& params,
                   const RngStream& rng) {
  check_inputs(features, targets);
  const Index n = features.rows();
  if (params.folds < 2 || params.folds > n) {
    throw InvalidParameter("lasso needs 2 <= folds <= n");
  }
  if (params.lambda_grid_size < 1 || !(params.lambda_min_ratio > 0.0 && params.lambda_min_ratio < 1.0)) {
    throw InvalidParameter("lasso grid needs size >= 1 and min ratio in (0, 1)");
  }

  const Standardized full = standardize(features, targets);
  LassoPath path;
  path.lambda_grid = lambda_grid(lambda_max_of(full), params);
  const Index grid_size = path.lambda_grid.size();
  std::vector<double> held_out_sse(grid_size, 0.0);

  const auto folds = make_folds(n, params.folds, rng);
  std::vector<char> in_fold(n);
  for (const auto& fold : folds) {
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (Index i : fold) in_fold[i] = 1;
    std::vector<Index> train_rows;
    train_rows.reserve(n - fold.size());
    for (Index i = 0; i < n; ++i) {
      if (!in_fold[i]) train_rows.push_back(i);
    }
    const FeatureMatrix fold_x = features.select_rows(train_rows);
    Vector fold_y(static_cast<Eigen::Index>(train_rows.size()));
    for (Index i = 0; i < train_rows.size(); ++i) fold_y[static_cast<Eigen::Index>(i)] = targets[static_cast<Eigen::Index>(train_rows[i])];
    const FeatureMatrix held_x = features.select_rows(fold);

    const Standardized s = standardize(fold_x, fold_y);
    Vector beta = Vector::Zero(s.z.cols());
    Vector residual = s.target;
    for (Index l = 0; l < grid_size; ++l) {
      coordinate_descent(s, path.lambda_grid[l], params, beta, residual, nullptr);
      const Vector pred = to_original_scale(s, beta)->predict(held_x);
      for (Index i = 0; i < fold.size(); ++i) {
        const double e = pred[static_cast<Eigen::Index>(i)] - targets[static_cast<Eigen::Index>(fold[i])];
        held_out_sse[l] += e * e;
      }
    }
  }

  path.cv_errors.resize(grid_size);
  Index best = 0;
  for (Index l = 0; l < grid_size; ++l) {
    path.cv_errors[l] = held_out_sse[l] / static_cast<double>(n);
    if (path.cv_errors[l] < path.cv_errors[best]) best = l;
  }
  path.chosen_lambda = path.lambda_grid[best];

  Vector beta = Vector::Zero(full.z.cols());
  Vector residual = full.target;
  for (Index l = 0; l <= best; ++l) {
    coordinate_descent(full, path.lambda_grid[l], params, beta, residual, nullptr);
  }
  return LassoFit{to_original_scale(full, beta), std::move(path)};
}

double lasso_objective(const FeatureMatrix& features, const Vector& targets, const LinearModel& model,
                       double lambda) {
  const Standardized s = standardize(features, targets);
  const Vector residual = targets - model.predict(features);
  Vector beta_std = model.coefficients().cwiseProduct(s.scale);
  return objective(residual, beta_std, lambda);
}

double lasso_kkt_violation(const FeatureMatrix& features, const Vector& targets, const LinearModel& model,
                           double lambda) {
  const Standardized s = standardize(features, targets);
  const auto n = static_cast<double>(features.rows());
  const Vector residual = targets - model.predict(features);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < s.z.cols(); ++j) {
    if (s.scale[j] == 0.0) continue;
    const double gradient = s.z.col(j).dot(residual) / n;
    const double b = model.coefficients()[j];
    const double violation = b != 0.0 ? std::abs(gradient - lambda * (b > 0.0 ? 1.0 : -1.0))
                                      : std::max(0.0, std::abs(gradient) - lambda);
    worst = std::max(worst, violation);
  }
  return worst;
}

}  // namespace wear
