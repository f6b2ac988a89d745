#pragma once

#include <span>
#include <vector>

#include "wear/core.hpp"
#include "wear/learners/learner.hpp"

namespace wear {

/// Per-expert validation MSEs, the inverse-variance weights derived from
/// them, and the per-expert regressions that produced the MSEs.
struct ExpertiseProfile {
  std::vector<double> expert_mses;
  std::vector<double> weights;
  std::vector<ModelPtr> per_expert_models;

  Index experts() const { return weights.size(); }
};

/// Weighted mean of the expert opinions for every row.
struct WeightedLabels {
  Vector values;
  std::vector<double> weights;
};

/// Expertise profile plus the final regression of the weighted labels on x.
struct WearModel {
  ExpertiseProfile profile;
  ModelPtr final_model;

  Vector predict(const FeatureMatrix& features) const;
};

/// Replaces each variance by max(v, 1e-12 * max_j v_j); if every entry is
/// zero the floor is 1e-12 and all experts end up equally weighted.
std::vector<double> floor_variances(std::span<const double> variances);

/// w_i = (1 / v_i) / sum_j (1 / v_j), evaluated as 1 / sum_j (v_i / v_j).
/// Throws InvalidParameter for an empty input or any non-positive or
/// non-finite variance.
std::vector<double> optimal_weights(std::span<const double> variances);

/// (1/m) sum_k (Y'_{k,j} - model(x'_k))^2 over the validation rows.
double estimate_expert_mse(const FittedModel& model, const MultiAnnotatedDataset& validation, Index expert);

/// Row-wise weighted mean of the annotations. The weights must be
/// non-negative and sum to 1 within 1e-4. The result is clamped to the row's
/// [min, max] so it stays a convex combination despite rounding.
WeightedLabels aggregate(const AnnotationMatrix& annotations, std::span<const double> weights);

/// Fits r_j on the training partition for every expert, scores each on the
/// validation partition and turns the floored MSEs into weights.
ExpertiseProfile estimate_expertise(const MultiAnnotatedDataset& train, const MultiAnnotatedDataset& validation,
                                    const LearnerSpec& expert_learner, const RngStream& rng);

/// Aggregates the training annotations with `profile` and regresses the
/// weighted labels on the training covariates.
WearModel fit_final_stage(const MultiAnnotatedDataset& train, ExpertiseProfile profile,
                          const LearnerSpec& final_learner, const RngStream& rng);

/// Full pipeline on an existing split. The test partition is never read.
WearModel fit_wear(const Partitions& parts, const LearnerSpec& expert_learner, const LearnerSpec& final_learner,
                   const RngStream& rng);

/// Splits `data` with `split`, then runs the pipeline above.
WearModel fit_wear(const MultiAnnotatedDataset& data, const SplitSpec& split, const LearnerSpec& expert_learner,
                   const LearnerSpec& final_learner, const RngStream& rng);

/// Substream ids used inside the pipeline.
namespace streams {
inline constexpr std::uint64_t kFinalStage = 0;
inline constexpr std::uint64_t kExpertBase = 100;
}  // namespace streams

}  // namespace wear
