#include "wear/baselines.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace wear {

ModelPtr fit_arithmetic_mean(const Partitions& parts, const LearnerSpec& final_learner, const RngStream& rng) {
  const Index experts = parts.train.experts();
  if (experts == 0) throw InvalidInput("dataset has no expert annotations");
  ExpertiseProfile equal;
  equal.weights.assign(experts, 1.0 / static_cast<double>(experts));
  return fit_final_stage(parts.train, std::move(equal), final_learner, rng).final_model;
}

ModelPtr fit_arithmetic_mean(const MultiAnnotatedDataset& data, const SplitSpec& split_spec,
                             const LearnerSpec& final_learner, const RngStream& rng) {
  return fit_arithmetic_mean(split(data, split_spec), final_learner, rng);
}

ModelPtr fit_gold_standard(const Partitions& parts, const LearnerSpec& final_learner, const RngStream& rng) {
  if (!parts.train.has_true_labels()) throw InvalidInput("gold standard needs true labels");
  return fit(final_learner, parts.train.features, parts.train.labels(), rng.substream(streams::kFinalStage));
}

ModelPtr fit_gold_standard(const MultiAnnotatedDataset& data, const SplitSpec& split_spec,
                           const LearnerSpec& final_learner, const RngStream& rng) {
  return fit_gold_standard(split(data, split_spec), final_learner, rng);
}

std::vector<double> RaykarState::variances() const {
  std::vector<double> out(precisions.size());
  for (Index j = 0; j < precisions.size(); ++j) out[j] = 1.0 / precisions[j];
  return out;
}

std::shared_ptr<const LinearModel> RaykarState::model() const {
  return std::make_shared<const LinearModel>(intercept, coefficients);
}

namespace {

std::vector<double> residual_mses(const Matrix& annotations, const Vector& fitted) {
  const auto n = static_cast<double>(annotations.rows());
  std::vector<double> out(static_cast<Index>(annotations.cols()));
  for (Eigen::Index j = 0; j < annotations.cols(); ++j) {
    out[static_cast<Index>(j)] = (annotations.col(j) - fitted).squaredNorm() / n;
  }
  return out;
}

double log_likelihood_from_mses(std::span<const double> mses, std::span<const double> variances, double n) {
  double ll = 0.0;
  for (Index j = 0; j < variances.size(); ++j) {
    ll += -0.5 * n * std::log(2.0 * std::numbers::pi * variances[j]) - 0.5 * n * mses[j] / variances[j];
  }
  return ll;
}

}  // namespace

double raykar_log_likelihood(const MultiAnnotatedDataset& data, const LinearModel& model,
                             std::span<const double> variances) {
  if (variances.size() != data.experts()) throw InvalidInput("one variance per expert expected");
  const auto mses = residual_mses(data.annotations.values(), model.predict(data.features));
  return log_likelihood_from_mses(mses, variances, static_cast<double>(data.rows()));
}

RaykarState fit_raykar(const MultiAnnotatedDataset& data, const RaykarOptions& options) {
  const Index experts = data.experts();
  if (experts == 0) throw InvalidInput("dataset has no expert annotations");
  const Matrix& y = data.annotations.values();
  const auto n = static_cast<double>(data.rows());
  const LeastSquares ls(data.features);

  const Vector row_mean = y.rowwise().mean();
  LinearModel current = ls.solve(row_mean);
  Vector fitted = current.predict(data.features);
  const double mean_fit_mse = (row_mean - fitted).squaredNorm() / n;
  std::vector<double> raw(experts);
  for (Index j = 0; j < experts; ++j) {
    raw[j] = (y.col(static_cast<Eigen::Index>(j)) - row_mean).squaredNorm() / n + mean_fit_mse;
  }
  std::vector<double> variances = floor_variances(raw);

  RaykarState state;
  double ll = log_likelihood_from_mses(residual_mses(y, fitted), variances, n);
  state.likelihood_trace.push_back(ll);

  for (Index it = 1; it <= options.max_iters; ++it) {
    // (a) precision-weighted consensus, then least squares.
    Vector precision(static_cast<Eigen::Index>(experts));
    for (Index j = 0; j < experts; ++j) precision[static_cast<Eigen::Index>(j)] = 1.0 / variances[j];
    const Vector consensus = (y * precision) / precision.sum();
    current = ls.solve(consensus);
    fitted = current.predict(data.features);

    // (b) per-annotator noise variance.
    const auto mses = residual_mses(y, fitted);
    variances = floor_variances(mses);
    const double next = log_likelihood_from_mses(mses, variances, n);
    state.likelihood_trace.push_back(next);
    state.iterations = it;

    if (!std::isfinite(next)) {
      throw NumericalFailure("crowd EM produced a non-finite log-likelihood", state.likelihood_trace);
    }
    if (next < ll - 1e-10 * std::abs(ll)) {
      std::ostringstream msg;
      msg << "crowd EM log-likelihood decreased at iteration " << it << " (" << ll << " -> " << next << ")";
      throw NumericalFailure(msg.str(), state.likelihood_trace);
    }
    const double change = std::abs(next - ll) / std::max(std::abs(ll), 1e-300);
    ll = next;
    if (change < options.tol) {
      state.converged = true;
      break;
    }
  }

  state.intercept = current.intercept();
  state.coefficients = current.coefficients();
  state.precisions.resize(experts);
  for (Index j = 0; j < experts; ++j) state.precisions[j] = 1.0 / variances[j];
  state.log_likelihood = ll;
  return state;
}

RaykarState fit_raykar(const Partitions& parts, const RaykarOptions& options) {
  return fit_raykar(concatenate(parts.train, parts.validation), options);
}

}  // namespace wear
