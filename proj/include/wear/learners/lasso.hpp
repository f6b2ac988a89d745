#pragma once

#include <memory>
#include <vector>

#include "wear/learners/linear.hpp"

namespace wear {

/// Cross-validation record of a lasso fit.
struct LassoPath {
  std::vector<double> lambda_grid;  // strictly decreasing, positive
  std::vector<double> cv_errors;    // pooled held-out MSE per lambda
  double chosen_lambda = 0.0;
};

struct LassoFit {
  std::shared_ptr<const LinearModel> model;
  LassoPath path;
};

/*
 * Lasso on standardized covariates:
 *
 *   minimize (1/2n) sum_i (y_i - b0 - x_i' b)^2 + lambda * |b|_1
 *
 * where each column of x is centred and scaled to unit (1/n) variance. The
 * returned coefficients are mapped back to the original covariate scale.
 * Lambda is chosen by K-fold CV over a log-spaced grid from lambda_max down to
 * lambda_min_ratio * lambda_max; every fold and the final refit walk the grid
 * with warm starts.
 */
LassoFit fit_lasso(const FeatureMatrix& features, const Vector& targets, const LassoParams& params,
                   const RngStream& rng);

/// Objective value after every coordinate-descent sweep.
struct LassoTrace {
  std::vector<double> objective;
};

/// Lasso at a single fixed lambda (no CV). lambda = 0 gives least squares.
std::shared_ptr<const LinearModel> fit_lasso_fixed(const FeatureMatrix& features, const Vector& targets,
                                                   double lambda, const LassoParams& params = {},
                                                   LassoTrace* trace = nullptr);

/// Smallest lambda for which every slope is exactly zero.
double lasso_lambda_max(const FeatureMatrix& features, const Vector& targets);

/// Standardized-scale objective of an original-scale linear model.
double lasso_objective(const FeatureMatrix& features, const Vector& targets, const LinearModel& model,
                       double lambda);

/// Largest violation of the lasso subgradient (KKT) conditions, evaluated on
/// the standardized scale: |g_j - lambda sign(b_j)| for active j, and
/// max(0, |g_j| - lambda) for inactive j, with g_j = x_j' r / n.
double lasso_kkt_violation(const FeatureMatrix& features, const Vector& targets, const LinearModel& model,
                           double lambda);

}  // namespace wear
