#include "wear/wear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wear {

Vector WearModel::predict(const FeatureMatrix& features) const {
  return final_model->predict(features);
}

std::vector<double> floor_variances(std::span<const double> variances) {
  if (variances.empty()) throw InvalidParameter("no variances to floor");
  double largest = 0.0;
  for (double v : variances) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidParameter("variance estimates must be finite and >= 0");
    largest = std::max(largest, v);
  }
  const double floor = largest > 0.0 ? 1e-12 * largest : 1e-12;
  std::vector<double> out(variances.begin(), variances.end());
  for (double& v : out) v = std::max(v, floor);
  return out;
}

std::vector<double> optimal_weights(std::span<const double> variances) {
  if (variances.empty()) throw InvalidParameter("optimal_weights needs at least one expert");
  for (Index j = 0; j < variances.size(); ++j) {
    if (!(variances[j] > 0.0) || !std::isfinite(variances[j])) {
      std::ostringstream msg;
      msg << "variance of expert " << j << " must be positive and finite (got " << variances[j] << ")";
      throw InvalidParameter(msg.str());
    }
  }
  // w_i = 1 / sum_j (v_i / v_j). Built from ratios only, so scaling every
  // variance by c gives bit-identical weights whenever c * v_j is exact.
  std::vector<double> weights(variances.size());
  for (Index i = 0; i < variances.size(); ++i) {
    double total = 0.0;
    for (double v : variances) total += variances[i] / v;
    weights[i] = 1.0 / total;
  }
  return weights;
}

double estimate_expert_mse(const FittedModel& model, const MultiAnnotatedDataset& validation, Index expert) {
  if (validation.rows() == 0) throw InvalidInput("empty validation set");
  if (expert >= validation.experts()) throw InvalidInput("expert index out of range");
  return mean_squared_error(model.predict(validation.features), validation.annotations.expert(expert));
}

WeightedLabels aggregate(const AnnotationMatrix& annotations, std::span<const double> weights) {
  if (weights.size() != annotations.experts()) {
    std::ostringstream msg;
    msg << "aggregate: " << weights.size() << " weights for " << annotations.experts() << " experts";
    throw InvalidInput(msg.str());
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("aggregate: weights must be finite and >= 0");
    total += w;
  }
  // Weights printed to six decimals miss 1 by ~1e-6; anything further off is a caller bug.
  if (std::abs(total - 1.0) > 1e-4) throw InvalidInput("aggregate: weights must sum to 1");

  const auto w = Eigen::Map<const Vector>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  const Matrix& y = annotations.values();
  Vector values = y * w;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    values[k] = std::clamp(values[k], y.row(k).minCoeff(), y.row(k).maxCoeff());
  }
  return WeightedLabels{std::move(values), std::vector<double>(weights.begin(), weights.end())};
}

ExpertiseProfile estimate_expertise(const MultiAnnotatedDataset& train, const MultiAnnotatedDataset& validation,
                                    const LearnerSpec& expert_learner, const RngStream& rng) {
  const Index experts = train.experts();
  if (experts == 0) throw InvalidInput("dataset has no expert annotations");
  if (validation.experts() != experts) throw InvalidInput("train and validation disagree on expert count");

  ExpertiseProfile profile;
  profile.per_expert_models.reserve(experts);
  std::vector<double> raw(experts);
  for (Index j = 0; j < experts; ++j) {
    ModelPtr model = fit(expert_learner, train.features, train.annotations.expert(j),
                         rng.substream(streams::kExpertBase + j));
    raw[j] = estimate_expert_mse(*model, validation, j);
    profile.per_expert_models.push_back(std::move(model));
  }
  profile.expert_mses = floor_variances(raw);
  profile.weights = optimal_weights(profile.expert_mses);
  return profile;
}

WearModel fit_final_stage(const MultiAnnotatedDataset& train, ExpertiseProfile profile,
                          const LearnerSpec& final_learner, const RngStream& rng) {
  const WeightedLabels labels = aggregate(train.annotations, profile.weights);
  ModelPtr model = fit(final_learner, train.features, labels.values, rng.substream(streams::kFinalStage));
  return WearModel{std::move(profile), std::move(model)};
}

WearModel fit_wear(const Partitions& parts, const LearnerSpec& expert_learner, const LearnerSpec& final_learner,
                   const RngStream& rng) {
  ExpertiseProfile profile = estimate_expertise(parts.train, parts.validation, expert_learner, rng);
  return fit_final_stage(parts.train, std::move(profile), final_learner, rng);
}

WearModel fit_wear(const MultiAnnotatedDataset& data, const SplitSpec& split_spec, const LearnerSpec& expert_learner,
                   const LearnerSpec& final_learner, const RngStream& rng) {
  return fit_wear(split(data, split_spec), expert_learner, final_learner, rng);
}

}  // namespace wear
