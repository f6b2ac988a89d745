#include "wear/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace wear {

std::string_view to_string(Framework f) {
  switch (f) {
    case Framework::wear: return "wear";
    case Framework::raykar: return "raykar";
    case Framework::arithmetic_mean: return "arithmetic_mean";
    case Framework::gold_standard: return "gold_standard";
  }
  return "unknown";
}

Framework framework_from_string(std::string_view name) {
  for (auto f : {Framework::wear, Framework::raykar, Framework::arithmetic_mean, Framework::gold_standard}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidParameter("unknown framework '" + std::string(name) + "'");
}

const AggregateCell* AggregateReport::find(Framework framework, std::string_view learner) const {
  for (const auto& c : cells) {
    if (c.framework == framework && c.learner == learner) return &c;
  }
  return nullptr;
}

double test_mse(const Vector& predictions, const Vector& true_labels) {
  return mean_squared_error(predictions, true_labels);
}

double variance_deviation(std::span<const double> estimated, std::span<const double> reference) {
  if (estimated.size() != reference.size()) throw InvalidInput("variance_deviation: length mismatch");
  if (estimated.empty()) throw InvalidInput("variance_deviation: no experts");
  double total = 0.0;
  for (Index j = 0; j < estimated.size(); ++j) total += std::abs(estimated[j] - reference[j]);
  return total / static_cast<double>(estimated.size());
}

namespace {

int learner_rank(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::linear: return 0;
    case LearnerKind::forest: return 1;
    case LearnerKind::tree: return 2;
    case LearnerKind::lasso: return 3;
  }
  return 4;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Two-pass mean and sample standard error over values sorted ascending, so
// the result does not depend on the order reports arrive in.
MeanSe summarize(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto r = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / r;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (r - 1.0)) / std::sqrt(r)};
}

}  // namespace

AggregateReport aggregate(std::span<const ReplicationReport> reports) {
  using Key = std::tuple<int, int, std::string>;
  struct Bucket {
    Framework framework;
    std::string learner;
    LearnerKind kind;
    std::vector<double> mse;
    std::vector<double> deviation;
    std::set<Index> seen;
  };
  std::map<Key, Bucket> buckets;
  for (const auto& r : reports) {
    Key key{static_cast<int>(r.framework), learner_rank(r.learner_kind), r.learner};
    auto [it, inserted] = buckets.try_emplace(key, Bucket{r.framework, r.learner, r.learner_kind, {}, {}, {}});
    Bucket& b = it->second;
    if (!b.seen.insert(r.replication_id).second) {
      std::ostringstream msg;
      msg << "duplicate report for " << to_string(r.framework) << "/" << r.learner << " replication "
          << r.replication_id;
      throw InvalidInput(msg.str());
    }
    b.mse.push_back(r.test_mse);
    if (r.weight_deviation) b.deviation.push_back(*r.weight_deviation);
  }

  AggregateReport out;
  for (auto& [key, b] : buckets) {
    if (!b.deviation.empty() && b.deviation.size() != b.mse.size()) {
      throw InvalidInput("inconsistent reports: weight deviation missing for some replications of " +
                         std::string(to_string(b.framework)) + "/" + b.learner);
    }
    AggregateCell cell;
    cell.framework = b.framework;
    cell.learner = b.learner;
    cell.learner_kind = b.kind;
    cell.replications = b.mse.size();
    cell.single_replication = b.mse.size() == 1;
    const auto mse = summarize(b.mse);
    cell.mean_mse = mse.mean;
    cell.standard_error_mse = mse.se;
    if (!b.deviation.empty()) {
      const auto dev = summarize(b.deviation);
      cell.mean_weight_deviation = dev.mean;
      cell.standard_error_weight_deviation = dev.se;
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace wear
