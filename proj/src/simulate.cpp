#include "wear/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace wear {

namespace {

constexpr std::array<double, 6> kCoefficients = {2.0, 1.0, 5.0, 0.5, 4.0, 3.0};
// Quadratic terms of the nonlinear mean: x1, x5 and x6.
constexpr std::array<bool, 6> kSquared = {true, false, false, false, true, true};

constexpr std::uint64_t kCovariateStream = 0;
constexpr std::uint64_t kLabelNoiseStream = 1;
constexpr std::uint64_t kExpertStreamBase = 100;

void check_variances(const std::vector<double>& variances) {
  if (variances.empty()) throw InvalidParameter("at least one expert variance is required");
  for (double v : variances) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter("expert variances must be positive and finite");
  }
}

Matrix draw_experts(const Vector& labels, const std::vector<double>& variances, const RngStream& base) {
  Matrix out(labels.size(), static_cast<Eigen::Index>(variances.size()));
  for (Index j = 0; j < variances.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) =
        labels + gaussian_sample(base.substream(kExpertStreamBase + j), 0.0, std::sqrt(variances[j]),
                                 static_cast<Index>(labels.size()));
  }
  return out;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::experiment1: return "experiment1";
    case GeneratorKind::experiment2: return "experiment2";
    case GeneratorKind::experiment3: return "experiment3";
    case GeneratorKind::experiment4: return "experiment4";
    case GeneratorKind::custom: return "custom";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  for (auto k : {GeneratorKind::experiment1, GeneratorKind::experiment2, GeneratorKind::experiment3,
                 GeneratorKind::experiment4, GeneratorKind::custom}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidParameter("unknown generator kind '" + std::string(name) + "'");
}

std::string_view to_string(MeanFunction f) {
  return f == MeanFunction::quadratic ? "quadratic" : "linear";
}

MeanFunction mean_function_from_string(std::string_view name) {
  if (name == "quadratic") return MeanFunction::quadratic;
  if (name == "linear") return MeanFunction::linear;
  throw InvalidParameter("unknown mean function '" + std::string(name) + "'");
}

GeneratorSpec GeneratorSpec::experiment(int k, Index n, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = seed;
  const std::vector<double> similar = {4.0, 4.41, 4.84, 5.0625};
  const std::vector<double> spread = {4.0, 100.0, 2500.0, 10000.0};
  switch (k) {
    case 1: spec.kind = GeneratorKind::experiment1; spec.mean_function = MeanFunction::quadratic; spec.expert_variances = similar; break;
    case 2: spec.kind = GeneratorKind::experiment2; spec.mean_function = MeanFunction::quadratic; spec.expert_variances = spread; break;
    case 3: spec.kind = GeneratorKind::experiment3; spec.mean_function = MeanFunction::linear; spec.expert_variances = similar; break;
    case 4: spec.kind = GeneratorKind::experiment4; spec.mean_function = MeanFunction::linear; spec.expert_variances = spread; break;
    default: throw InvalidParameter("built-in experiments are numbered 1 to 4");
  }
  return spec;
}

void GeneratorSpec::validate() const {
  if (n < 1) throw InvalidParameter("generator needs n >= 1");
  if (dimension < 1) throw InvalidParameter("generator needs d >= 1");
  if (kind != GeneratorKind::custom && dimension < 6) {
    throw InvalidParameter("built-in experiments need d >= 6");
  }
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw InvalidParameter("noise_sd must be >= 0");
  if (covariates.kind == CovariateDistribution::Kind::normal && !(covariates.b >= 0.0)) {
    throw InvalidParameter("normal covariates need sd >= 0");
  }
  if (covariates.kind == CovariateDistribution::Kind::uniform && !(covariates.a < covariates.b)) {
    throw InvalidParameter("uniform covariates need low < high");
  }
  check_variances(expert_variances);
}

std::vector<double> GeneratorSpec::conditional_expert_variances() const {
  std::vector<double> out(expert_variances);
  for (double& v : out) v += noise_sd * noise_sd;
  return out;
}

Vector mean_function(MeanFunction f, const FeatureMatrix& features) {
  const Matrix& x = features.values();
  Vector out = Vector::Zero(x.rows());
  const auto terms = std::min<Eigen::Index>(x.cols(), 6);
  for (Eigen::Index j = 0; j < terms; ++j) {
    const auto jj = static_cast<Index>(j);
    if (f == MeanFunction::quadratic && kSquared[jj]) {
      out += kCoefficients[jj] * x.col(j).cwiseAbs2();
    } else {
      out += kCoefficients[jj] * x.col(j);
    }
  }
  return out;
}

MultiAnnotatedDataset generate(const GeneratorSpec& spec) {
  spec.validate();
  const RngStream base(spec.seed, 0);
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.dimension);

  Matrix x(n, d);
  auto engine = base.substream(kCovariateStream).engine();
  if (spec.covariates.kind == CovariateDistribution::Kind::normal && spec.covariates.b == 0.0) {
    x.setConstant(spec.covariates.a);
  } else if (spec.covariates.kind == CovariateDistribution::Kind::normal) {
    std::normal_distribution<double> dist(spec.covariates.a, spec.covariates.b);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = dist(engine);
  } else {
    std::uniform_real_distribution<double> dist(spec.covariates.a, spec.covariates.b);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = dist(engine);
  }
  FeatureMatrix features(std::move(x));

  Vector labels = mean_function(spec.mean_function, features) +
                  gaussian_sample(base.substream(kLabelNoiseStream), 0.0, spec.noise_sd, spec.n);
  Matrix experts = draw_experts(labels, spec.expert_variances, base);
  return MultiAnnotatedDataset(std::move(features), AnnotationMatrix(std::move(experts)), std::move(labels));
}

void ExpertOverlaySpec::validate() const { check_variances(expert_variances); }

MultiAnnotatedDataset overlay_experts(const MultiAnnotatedDataset& data, const ExpertOverlaySpec& spec) {
  spec.validate();
  const Vector& labels = data.labels();
  Matrix experts = draw_experts(labels, spec.expert_variances, RngStream(spec.seed, 0));
  return MultiAnnotatedDataset(data.features, AnnotationMatrix(std::move(experts)), labels);
}

}  // namespace wear
