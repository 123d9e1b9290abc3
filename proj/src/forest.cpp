#include "riskminer/forest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "riskminer/error.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

namespace {

double gini(const std::vector<int>& counts, int total) {
  double impurity = 1.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / total;
    impurity -= p * p;
  }
  return impurity;
}

struct SplitChoice {
  bool found = false;
  int feature = 0;
  double threshold = 0.0;
  double score = 0.0;  // weighted child Gini

  bool better_than(const SplitChoice& other) const {
    if (!other.found) return true;
    if (score != other.score) return score < other.score;
    if (feature != other.feature) return feature < other.feature;
    return threshold < other.threshold;
  }
};

class TreeGrower {
 public:
  TreeGrower(const Matrix& x, const std::vector<int>& y, int n_classes,
             const ForestConfig& config, int mtry, Rng rng)
      : x_(x), y_(y), n_classes_(n_classes), config_(config), mtry_(mtry),
        rng_(std::move(rng)) {}

  Tree grow() {
    const int n = static_cast<int>(x_.rows());
    std::vector<int> sample(n);
    for (int i = 0; i < n; ++i) sample[i] = static_cast<int>(rng_.below(n));
    Tree tree;
    build(tree, sample, 0);
    return tree;
  }

 private:
  int build(Tree& tree, const std::vector<int>& rows, int depth) {
    std::vector<int> counts(n_classes_, 0);
    for (int i : rows) ++counts[y_[i]];
    const int node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[node_index].counts = counts;

    const int populated =
        static_cast<int>(std::count_if(counts.begin(), counts.end(),
                                       [](int c) { return c > 0; }));
    const bool depth_capped =
        config_.max_depth >= 0 && depth >= config_.max_depth;
    if (populated <= 1 || depth_capped ||
        static_cast<int>(rows.size()) < 2 * config_.min_leaf)
      return node_index;

    const SplitChoice split = best_split(rows, counts);
    if (!split.found) return node_index;

    std::vector<int> left, right;
    for (int i : rows)
      (x_(i, split.feature) <= split.threshold ? left : right).push_back(i);

    tree.nodes[node_index].feature = split.feature;
    tree.nodes[node_index].threshold = split.threshold;
    const int left_index = build(tree, left, depth + 1);
    tree.nodes[node_index].left = left_index;
    const int right_index = build(tree, right, depth + 1);
    tree.nodes[node_index].right = right_index;
    return node_index;
  }

  SplitChoice best_split(const std::vector<int>& rows,
                         const std::vector<int>& counts) {
    const int f = static_cast<int>(x_.cols());
    std::vector<int> features(f);
    std::iota(features.begin(), features.end(), 0);
    // partial Fisher-Yates: the first mtry entries are the sampled features
    for (int i = 0; i < mtry_; ++i) {
      const int j = i + static_cast<int>(rng_.below(f - i));
      std::swap(features[i], features[j]);
    }

    const int n = static_cast<int>(rows.size());
    const double parent = gini(counts, n);
    SplitChoice best;

    std::vector<std::pair<double, int>> column(n);
    for (int fi = 0; fi < mtry_; ++fi) {
      const int feature = features[fi];
      for (int i = 0; i < n; ++i)
        column[i] = {x_(rows[i], feature), y_[rows[i]]};
      std::sort(column.begin(), column.end());

      std::vector<int> left_counts(n_classes_, 0);
      std::vector<int> right_counts = counts;
      int n_left = 0;
      for (int i = 0; i + 1 < n; ++i) {
        ++left_counts[column[i].second];
        --right_counts[column[i].second];
        ++n_left;
        if (column[i].first == column[i + 1].first) continue;
        if (n_left < config_.min_leaf || n - n_left < config_.min_leaf) continue;

        const double lo = column[i].first, hi = column[i + 1].first;
        const double threshold = lo + (hi - lo) / 2.0;
        const double score = (static_cast<double>(n_left) / n) * gini(left_counts, n_left) +
                             (static_cast<double>(n - n_left) / n) *
                                 gini(right_counts, n - n_left);
        if (score >= parent - 1e-12) continue;  // no impurity decrease
        SplitChoice candidate{true, feature, threshold, score};
        if (candidate.better_than(best)) best = candidate;
      }
    }
    return best;
  }

  const Matrix& x_;
  const std::vector<int>& y_;
  int n_classes_;
  const ForestConfig& config_;
  int mtry_;
  Rng rng_;
};

}  // namespace

ForestModel train_forest(const Matrix& x, const std::vector<std::string>& labels,
                         const ForestConfig& config) {
  if (x.rows() == 0 || x.cols() == 0)
    fail(ErrorCode::DegenerateData, "empty feature matrix");
  if (static_cast<std::size_t>(x.rows()) != labels.size())
    fail(ErrorCode::LengthMismatch, "rows and labels differ in length");

  const int f = static_cast<int>(x.cols());
  const int mtry = config.mtry < 0
                       ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(f))))
                       : config.mtry;
  if (config.n_trees < 1 || config.min_leaf < 1 || mtry < 1 || mtry > f)
    fail(ErrorCode::InvalidConfig, "forest config out of range");

  ForestModel model;
  model.labels.assign(labels.begin(), labels.end());
  std::sort(model.labels.begin(), model.labels.end());
  model.labels.erase(std::unique(model.labels.begin(), model.labels.end()),
                     model.labels.end());
  model.config = config;
  model.config.mtry = mtry;
  model.n_features = f;

  std::map<std::string, int> class_index;
  for (std::size_t ci = 0; ci < model.labels.size(); ++ci)
    class_index[model.labels[ci]] = static_cast<int>(ci);
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = class_index[labels[i]];

  Rng root(config.seed);
  model.trees.reserve(config.n_trees);
  for (int t = 0; t < config.n_trees; ++t) {
    TreeGrower grower(x, y, static_cast<int>(model.labels.size()), model.config,
                      mtry, root.split(static_cast<std::uint64_t>(t)));
    model.trees.push_back(grower.grow());
  }
  return model;
}

std::pair<std::string, Vector> predict_forest(const ForestModel& model,
                                              const Vector& x) {
  if (x.size() != model.n_features)
    fail(ErrorCode::DimensionMismatch, "feature vector of length " +
                                           std::to_string(x.size()) + ", expected " +
                                           std::to_string(model.n_features));
  Vector votes = Vector::Zero(static_cast<int>(model.labels.size()));
  for (const auto& tree : model.trees) {
    int node = 0;
    while (tree.nodes[node].feature >= 0)
      node = x[tree.nodes[node].feature] <= tree.nodes[node].threshold
                 ? tree.nodes[node].left
                 : tree.nodes[node].right;
    const auto& counts = tree.nodes[node].counts;
    int leaf_best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
      if (counts[c] > counts[leaf_best]) leaf_best = static_cast<int>(c);
    votes[leaf_best] += 1.0;
  }
  votes /= static_cast<double>(model.trees.size());
  int best = 0;
  for (int c = 1; c < votes.size(); ++c)
    if (votes[c] > votes[best]) best = c;
  return {model.labels[best], votes};
}

}  // namespace riskminer
