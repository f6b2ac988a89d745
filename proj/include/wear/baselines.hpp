#pragma once

#include <memory>
#include <vector>

#include "wear/core.hpp"
#include "wear/learners/linear.hpp"
#include "wear/wear.hpp"

namespace wear {

/// Regresses the unweighted row mean of the training annotations on x.
/// Shares the final-stage stream with `fit_wear`, so it coincides with a
/// WEAR fit whose expert weights are all equal.
ModelPtr fit_arithmetic_mean(const Partitions& parts, const LearnerSpec& final_learner, const RngStream& rng);
ModelPtr fit_arithmetic_mean(const MultiAnnotatedDataset& data, const SplitSpec& split,
                             const LearnerSpec& final_learner, const RngStream& rng);

/// Regresses the true labels on x over the training partition.
ModelPtr fit_gold_standard(const Partitions& parts, const LearnerSpec& final_learner, const RngStream& rng);
ModelPtr fit_gold_standard(const MultiAnnotatedDataset& data, const SplitSpec& split,
                           const LearnerSpec& final_learner, const RngStream& rng);

struct RaykarOptions {
  Index max_iters = 500;
  double tol = 1e-8;  // relative log-likelihood change
};

/// Fixed point of the crowd-regression EM for a linear model with one
/// Gaussian noise precision per annotator.
struct RaykarState {
  double intercept = 0.0;
  Vector coefficients;
  std::vector<double> precisions;      // lambda_j = 1 / sigma_j^2
  double log_likelihood = 0.0;
  Index iterations = 0;
  std::vector<double> likelihood_trace;  // initial value, then one per iteration
  bool converged = false;

  std::vector<double> variances() const;
  std::shared_ptr<const LinearModel> model() const;
};

/*
 * Alternating maximization of
 *
 *   sum_{i,j} log N(Y_ij ; b0 + x_i' b, 1 / lambda_j)
 *
 * (a) with the precisions fixed, b is least squares on the precision-weighted
 *     row mean sum_j lambda_j Y_ij / sum_j lambda_j;
 * (b) with b fixed, 1 / lambda_j is the mean squared residual of annotator j.
 *
 * Start: b from least squares on the row means; sigma_j^2 = mean squared
 * deviation of annotator j from the row mean plus the residual MSE of that
 * fit. Both steps are exact block maximizations, so the likelihood never
 * decreases; a decrease beyond rounding, or a non-finite value, raises
 * NumericalFailure with the trace. Stops when the relative change falls
 * below `tol` or after `max_iters` iterations.
 */
RaykarState fit_raykar(const MultiAnnotatedDataset& data, const RaykarOptions& options = {});

/// Fits on train + validation combined; the test partition is untouched.
RaykarState fit_raykar(const Partitions& parts, const RaykarOptions& options = {});

/// Gaussian log-likelihood of the annotations under (model, variances).
double raykar_log_likelihood(const MultiAnnotatedDataset& data, const LinearModel& model,
                             std::span<const double> variances);

}  // namespace wear
