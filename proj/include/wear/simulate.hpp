#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wear/core.hpp"

namespace wear {

enum class GeneratorKind { experiment1, experiment2, experiment3, experiment4, custom };

std::string_view to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view name);

/// 2x1^2 + x2 + 5x3 + 0.5x4 + 4x5^2 + 3x6^2, or the same coefficients with
/// every term linear.
enum class MeanFunction { quadratic, linear };

std::string_view to_string(MeanFunction f);
MeanFunction mean_function_from_string(std::string_view name);

struct CovariateDistribution {
  enum class Kind { normal, uniform };
  Kind kind = Kind::normal;
  double a = 0.0;  // normal: mean; uniform: lower bound
  double b = 1.0;  // normal: sd;   uniform: upper bound
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::experiment1;
  Index n = 100000;
  Index dimension = 6;
  CovariateDistribution covariates;
  MeanFunction mean_function = MeanFunction::quadratic;
  double noise_sd = 3.0;
  std::vector<double> expert_variances;
  std::uint64_t seed = 0;

  /// Built-in experiment k in 1..4 with its mean function and expert
  /// variances, standard-normal covariates in d = 6 and noise sd 3.
  static GeneratorSpec experiment(int k, Index n, std::uint64_t seed);

  void validate() const;

  /// Var(Y_j | x) implied by the generator: noise_sd^2 + sigma_j^2.
  std::vector<double> conditional_expert_variances() const;
};

/// E[Y | x] for every row. Uses the first min(d, 6) covariates.
Vector mean_function(MeanFunction f, const FeatureMatrix& features);

/// Draws x, then Y = E[Y|x] + N(0, noise_sd^2), then Y_j = Y + N(0, sigma_j^2)
/// independently for each expert. Covariates, label noise and each expert
/// use separate substreams of (seed, 0).
MultiAnnotatedDataset generate(const GeneratorSpec& spec);

struct ExpertOverlaySpec {
  std::vector<double> expert_variances;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Replaces the annotations with Y_j = Y + N(0, sigma_j^2) drawn from the
/// true labels; features and labels are untouched.
MultiAnnotatedDataset overlay_experts(const MultiAnnotatedDataset& data, const ExpertOverlaySpec& spec);

}  // namespace wear
