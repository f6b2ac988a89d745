#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wear/errors.hpp"

namespace wear {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = std::size_t;

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// A value-type handle on an independent pseudo-random stream.
///
/// The pair (seed, stream_id) is hashed into the seed of a Mersenne twister,
/// so identical pairs replay identical sequences and distinct stream ids give
/// unrelated sequences. Substreams are derived by hashing the parent pair into
/// a new seed; no generator state is ever shared between consumers, which is
/// what lets replications and forest trees run in any order.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  constexpr RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Mixed 64-bit key of this stream; also usable as a derived seed.
  std::uint64_t key() const;

  RngStream substream(std::uint64_t id) const { return RngStream(key(), id); }

  /// Fresh engine positioned at the start of this stream.
  Engine engine() const { return Engine(key()); }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

/// i.i.d. draws from N(mean, sd^2). Throws InvalidParameter when sd < 0.
Vector gaussian_sample(const RngStream& stream, double mean, double sd, Index count);

// ---------------------------------------------------------------------------
// Matrices and datasets
// ---------------------------------------------------------------------------

/// n x d covariates, one row per observation. Finite entries only.
class FeatureMatrix {
 public:
  explicit FeatureMatrix(Matrix values);

  Index rows() const { return static_cast<Index>(values_.rows()); }
  Index cols() const { return static_cast<Index>(values_.cols()); }
  double operator()(Index i, Index j) const { return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Matrix& values() const { return values_; }

  FeatureMatrix select_rows(std::span<const Index> rows) const;

 private:
  Matrix values_;
};

/// n x J expert opinions. A matrix with zero experts is only produced by
/// `AnnotationMatrix::none` (freshly ingested data awaiting an overlay).
class AnnotationMatrix {
 public:
  explicit AnnotationMatrix(Matrix values);
  static AnnotationMatrix none(Index rows);

  Index rows() const { return static_cast<Index>(values_.rows()); }
  Index experts() const { return static_cast<Index>(values_.cols()); }
  double operator()(Index i, Index j) const { return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Matrix& values() const { return values_; }
  Vector expert(Index j) const { return values_.col(static_cast<Eigen::Index>(j)); }

  AnnotationMatrix select_rows(std::span<const Index> rows) const;

 private:
  AnnotationMatrix() = default;
  Matrix values_;
};

struct MultiAnnotatedDataset {
  MultiAnnotatedDataset(FeatureMatrix features, AnnotationMatrix annotations,
                        std::optional<Vector> true_labels = std::nullopt);

  Index rows() const { return features.rows(); }
  Index dimension() const { return features.cols(); }
  Index experts() const { return annotations.experts(); }
  bool has_true_labels() const { return true_labels.has_value(); }
  const Vector& labels() const;

  MultiAnnotatedDataset select_rows(std::span<const Index> rows) const;

  FeatureMatrix features;
  AnnotationMatrix annotations;
  std::optional<Vector> true_labels;
};

/// Row-wise concatenation; both sides must agree on d, J and label presence.
MultiAnnotatedDataset concatenate(const MultiAnnotatedDataset& a, const MultiAnnotatedDataset& b);

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

struct SplitSpec {
  double train_fraction = 0.7;
  double validation_fraction = 0.1;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;

  /// Throws InvalidSplit unless the fractions are in (0,1) and sum to 1.
  void validate() const;
  /// (train, validation, test) sizes for n rows. Validation and test get
  /// floor(fraction * n); the remainder goes to train.
  std::array<Index, 3> sizes(Index n) const;
};

struct Partitions {
  MultiAnnotatedDataset train;
  MultiAnnotatedDataset validation;
  MultiAnnotatedDataset test;
  std::vector<Index> train_rows;
  std::vector<Index> validation_rows;
  std::vector<Index> test_rows;
};

/// Disjoint, exhaustive partition by a uniform random permutation drawn from
/// the split seed. Throws InvalidSplit if any partition would be empty.
Partitions split(const MultiAnnotatedDataset& data, const SplitSpec& spec);

}  // namespace wear
