#include "wear/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wear {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidData(std::string(what) + " contains NaN or Inf");
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : Error([&] {
        std::string msg = "invalid configuration";
        for (const auto& d : diagnostics) msg += "\n  " + d;
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::uint64_t RngStream::key() const {
  return splitmix64(seed_ ^ splitmix64(stream_id_ + 0x632be59bd9b4e019ULL));
}

Vector gaussian_sample(const RngStream& stream, double mean, double sd, Index count) {
  if (!(sd >= 0.0) || !std::isfinite(sd) || !std::isfinite(mean)) {
    throw InvalidParameter("gaussian_sample: sd must be finite and >= 0");
  }
  Vector out(static_cast<Eigen::Index>(count));
  if (sd == 0.0) {
    out.setConstant(mean);
    return out;
  }
  auto engine = stream.engine();
  std::normal_distribution<double> dist(mean, sd);
  for (auto& v : out) v = dist(engine);
  return out;
}

// --- FeatureMatrix --------------------------------------------------------

FeatureMatrix::FeatureMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw InvalidData("feature matrix must have at least one row and one column");
  }
  require_finite(values_, "feature matrix");
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const Index> rows) const {
  Matrix out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (Index i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(rows[i]));
  return FeatureMatrix(std::move(out));
}

// --- AnnotationMatrix -----------------------------------------------------

AnnotationMatrix::AnnotationMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw InvalidData("annotation matrix must have at least one row and one expert");
  }
  require_finite(values_, "annotation matrix");
}

AnnotationMatrix AnnotationMatrix::none(Index rows) {
  AnnotationMatrix m;
  m.values_.resize(static_cast<Eigen::Index>(rows), 0);
  return m;
}

AnnotationMatrix AnnotationMatrix::select_rows(std::span<const Index> rows) const {
  Matrix out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (Index i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(rows[i]));
  if (values_.cols() == 0) return none(rows.size());
  return AnnotationMatrix(std::move(out));
}

// --- MultiAnnotatedDataset ------------------------------------------------

MultiAnnotatedDataset::MultiAnnotatedDataset(FeatureMatrix f, AnnotationMatrix a, std::optional<Vector> y)
    : features(std::move(f)), annotations(std::move(a)), true_labels(std::move(y)) {
  if (annotations.rows() != features.rows()) {
    throw InvalidData("annotation rows do not match feature rows");
  }
  if (true_labels) {
    if (static_cast<Index>(true_labels->size()) != features.rows()) {
      throw InvalidData("true label count does not match feature rows");
    }
    if (!true_labels->allFinite()) throw InvalidData("true labels contain NaN or Inf");
  }
}

const Vector& MultiAnnotatedDataset::labels() const {
  if (!true_labels) throw InvalidInput("dataset has no true labels");
  return *true_labels;
}

MultiAnnotatedDataset MultiAnnotatedDataset::select_rows(std::span<const Index> rows) const {
  std::optional<Vector> y;
  if (true_labels) {
    Vector v(static_cast<Eigen::Index>(rows.size()));
    for (Index i = 0; i < rows.size(); ++i) v[static_cast<Eigen::Index>(i)] = (*true_labels)[static_cast<Eigen::Index>(rows[i])];
    y = std::move(v);
  }
  return MultiAnnotatedDataset(features.select_rows(rows), annotations.select_rows(rows), std::move(y));
}

MultiAnnotatedDataset concatenate(const MultiAnnotatedDataset& a, const MultiAnnotatedDataset& b) {
  if (a.dimension() != b.dimension() || a.experts() != b.experts() ||
      a.has_true_labels() != b.has_true_labels()) {
    throw InvalidInput("concatenate: datasets have incompatible shapes");
  }
  const auto na = static_cast<Eigen::Index>(a.rows());
  const auto nb = static_cast<Eigen::Index>(b.rows());
  Matrix x(na + nb, a.features.values().cols());
  x << a.features.values(), b.features.values();
  Matrix y(na + nb, a.annotations.values().cols());
  if (y.cols() > 0) y << a.annotations.values(), b.annotations.values();
  std::optional<Vector> labels;
  if (a.true_labels) {
    Vector v(na + nb);
    v << *a.true_labels, *b.true_labels;
    labels = std::move(v);
  }
  AnnotationMatrix ann = y.cols() > 0 ? AnnotationMatrix(std::move(y)) : AnnotationMatrix::none(static_cast<Index>(na + nb));
  return MultiAnnotatedDataset(FeatureMatrix(std::move(x)), std::move(ann), std::move(labels));
}

// --- split ----------------------------------------------------------------

void SplitSpec::validate() const {
  for (double f : {train_fraction, validation_fraction, test_fraction}) {
    if (!(f > 0.0 && f < 1.0)) throw InvalidSplit("split fractions must lie in (0, 1)");
  }
  const double total = train_fraction + validation_fraction + test_fraction;
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "split fractions must sum to 1 (got " << total << ")";
    throw InvalidSplit(msg.str());
  }
}

std::array<Index, 3> SplitSpec::sizes(Index n) const {
  // The small slack absorbs representation error such as 0.1 * 30 = 3.0000000000000004
  // or 0.29 * 100 = 28.999999999999996.
  const auto part = [n](double f) {
    return static_cast<Index>(std::floor(f * static_cast<double>(n) + 1e-9));
  };
  const Index validation = part(validation_fraction);
  const Index test = part(test_fraction);
  const Index train = n >= validation + test ? n - validation - test : 0;
  return {train, validation, test};
}

Partitions split(const MultiAnnotatedDataset& data, const SplitSpec& spec) {
  spec.validate();
  const Index n = data.rows();
  const auto [n_train, n_val, n_test] = spec.sizes(n);
  if (n_train == 0 || n_val == 0 || n_test == 0) {
    std::ostringstream msg;
    msg << "split of " << n << " rows leaves an empty partition (train=" << n_train
        << ", validation=" << n_val << ", test=" << n_test << ")";
    throw InvalidSplit(msg.str());
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto engine = RngStream(spec.seed, 0).engine();
  // Fisher-Yates with an explicit uniform draw so the permutation does not
  // depend on the standard library's shuffle implementation.
  for (Index i = n; i > 1; --i) {
    std::uniform_int_distribution<Index> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(engine)]);
  }

  std::vector<Index> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<Index> val(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                         order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  std::vector<Index> test(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());
  std::sort(test.begin(), test.end());

  auto train_set = data.select_rows(train);
  auto val_set = data.select_rows(val);
  auto test_set = data.select_rows(test);
  return Partitions{std::move(train_set), std::move(val_set), std::move(test_set),
                    std::move(train), std::move(val), std::move(test)};
}

}  // namespace wear
