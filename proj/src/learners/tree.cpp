#include "wear/learners/tree.hpp"

#include <algorithm>
#include <numeric>

namespace wear {

TreeModel::TreeModel(std::vector<TreeNode> nodes, Index dimension)
    : nodes_(std::move(nodes)), dim_(dimension) {
  if (nodes_.empty()) throw InvalidInput("tree needs at least a root node");
}

Index TreeModel::leaf_of(const FeatureMatrix& features, Index row) const {
  Index node = 0;
  while (!nodes_[node].is_leaf()) {
    const TreeNode& n = nodes_[node];
    node = static_cast<Index>(features(row, static_cast<Index>(n.feature)) <= n.threshold ? n.left : n.right);
  }
  return node;
}

Vector TreeModel::predict(const FeatureMatrix& features) const {
  check_dimension(features);
  Vector out(static_cast<Eigen::Index>(features.rows()));
  for (Index i = 0; i < features.rows(); ++i) out[static_cast<Eigen::Index>(i)] = predict_row(features, i);
  return out;
}

Index TreeModel::leaves() const {
  return static_cast<Index>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

Index TreeModel::depth() const {
  Index d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

namespace detail {

namespace {

struct PendingNode {
  Index node;
  Index begin;
  Index end;
};

struct BestSplit {
  int feature = TreeNode::kLeaf;
  double threshold = 0.0;
  double gain = 0.0;
};

}  // namespace

TreeModel grow_tree(const FeatureMatrix& features, const Vector& targets, std::span<const Index> sample,
                    const TreeParams& params, Index mtry, RngStream::Engine* engine) {
  const Index m = sample.size();
  const Index d = features.cols();
  if (m == 0) throw InvalidInput("cannot grow a tree on an empty sample");
  const Index min_leaf = std::max<Index>(params.min_leaf, 1);

  // Slot-local copies: slot s holds row sample[s].
  Matrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  std::vector<double> y(m);
  for (Index s = 0; s < m; ++s) {
    x.row(static_cast<Eigen::Index>(s)) = features.values().row(static_cast<Eigen::Index>(sample[s]));
    y[s] = targets[static_cast<Eigen::Index>(sample[s])];
  }
  auto xv = [&x](Index s, Index f) { return x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(f)); };

  // Per-feature slot orderings, sorted by value. Every node owns the same
  // [begin, end) range in each of them.
  std::vector<Index> order(d * m);
  for (Index f = 0; f < d; ++f) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(f * m);
    std::iota(first, first + static_cast<std::ptrdiff_t>(m), Index{0});
    std::stable_sort(first, first + static_cast<std::ptrdiff_t>(m),
                     [&](Index a, Index b) { return xv(a, f) < xv(b, f); });
  }

  std::vector<Index> candidates(d);
  std::vector<char> goes_left(m);
  std::vector<Index> buffer(m);
  std::vector<TreeNode> nodes(1);
  std::vector<PendingNode> stack{{0, 0, m}};
  double root_sse = 0.0;

  while (!stack.empty()) {
    const PendingNode work = stack.back();
    stack.pop_back();
    const Index count = work.end - work.begin;
    const Index* seg0 = order.data() + work.begin;

    double sum = 0.0;
    double lo = y[seg0[0]];
    double hi = lo;
    for (Index k = 0; k < count; ++k) {
      sum += y[seg0[k]];
      lo = std::min(lo, y[seg0[k]]);
      hi = std::max(hi, y[seg0[k]]);
    }
    const double mean = sum / static_cast<double>(count);
    double sse = 0.0;
    for (Index k = 0; k < count; ++k) sse += (y[seg0[k]] - mean) * (y[seg0[k]] - mean);
    if (work.node == 0) root_sse = sse;

    TreeNode& node = nodes[work.node];
    node.value = mean;
    node.count = count;

    if (count < params.min_split || node.depth >= params.max_depth || lo == hi || count < 2 * min_leaf) {
      continue;
    }

    std::iota(candidates.begin(), candidates.end(), Index{0});
    Index n_candidates = d;
    if (engine != nullptr && mtry < d) {
      for (Index k = 0; k < mtry; ++k) {
        std::uniform_int_distribution<Index> pick(k, d - 1);
        std::swap(candidates[k], candidates[pick(*engine)]);
      }
      n_candidates = mtry;
      std::sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(mtry));
    }

    BestSplit best;
    for (Index c = 0; c < n_candidates; ++c) {
      const Index f = candidates[c];
      const Index* seg = order.data() + f * m + work.begin;
      double left_sum = 0.0;  // sum of centred targets on the left
      for (Index k = 0; k + 1 < count; ++k) {
        left_sum += y[seg[k]] - mean;
        const Index n_left = k + 1;
        const Index n_right = count - n_left;
        if (n_right < min_leaf) break;
        if (n_left < min_leaf) continue;
        const double v = xv(seg[k], f);
        const double next = xv(seg[k + 1], f);
        if (v == next) continue;
        const double gain = left_sum * left_sum * static_cast<double>(count) /
                            (static_cast<double>(n_left) * static_cast<double>(n_right));
        if (gain > best.gain) {
          double threshold = v + (next - v) / 2.0;
          if (threshold >= next) threshold = v;
          best = BestSplit{static_cast<int>(f), threshold, gain};
        }
      }
    }

    if (best.feature == TreeNode::kLeaf || !(best.gain > 0.0) || best.gain < params.complexity * root_sse) {
      continue;
    }

    const auto split_feature = static_cast<Index>(best.feature);
    Index n_left = 0;
    for (Index k = 0; k < count; ++k) {
      const Index s = seg0[k];
      goes_left[s] = xv(s, split_feature) <= best.threshold;
      n_left += goes_left[s] ? 1 : 0;
    }
    for (Index f = 0; f < d; ++f) {
      Index* seg = order.data() + f * m + work.begin;
      Index l = 0;
      Index r = n_left;
      for (Index k = 0; k < count; ++k) {
        if (goes_left[seg[k]]) buffer[l++] = seg[k];
        else buffer[r++] = seg[k];
      }
      std::copy(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(count), seg);
    }

    const Index depth = node.depth + 1;
    const auto left_id = static_cast<int>(nodes.size());
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left_id;
    node.right = left_id + 1;
    // `node` is invalidated by the push_backs below.
    nodes.push_back(TreeNode{TreeNode::kLeaf, 0.0, -1, -1, 0.0, 0, depth});
    nodes.push_back(TreeNode{TreeNode::kLeaf, 0.0, -1, -1, 0.0, 0, depth});
    stack.push_back({static_cast<Index>(left_id + 1), work.begin + n_left, work.end});
    stack.push_back({static_cast<Index>(left_id), work.begin, work.begin + n_left});
  }

  return TreeModel(std::move(nodes), d);
}

}  // namespace detail

std::shared_ptr<const TreeModel> fit_tree(const FeatureMatrix& features, const Vector& targets,
                                          const TreeParams& params) {
  require_finite_targets(targets, features.rows());
  std::vector<Index> rows(features.rows());
  std::iota(rows.begin(), rows.end(), Index{0});
  return std::make_shared<const TreeModel>(
      detail::grow_tree(features, targets, rows, params, features.cols(), nullptr));
}

}  // namespace wear
