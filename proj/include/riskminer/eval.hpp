#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/features.hpp"

namespace riskminer {

struct Ratios {
  double train = 0.7;
  double val = 0.15;
  double test = 0.15;
};

struct DataSplit {
  std::vector<int> train, val, test;
};

// Seeded shuffle then contiguous cut, sized by largest-remainder rounding
// (remainder ties resolved train, val, test). With stratify_labels, the
// allocation happens per label over the shuffled order, labels processed in
// sorted order.
DataSplit split(int n, const Ratios& ratios, std::uint64_t seed,
                const std::vector<std::string>* stratify_labels = nullptr);

// Disjoint covering folds; the first n % k folds are one element larger.
std::vector<std::vector<int>> kfold(int n, int k, std::uint64_t seed);

struct ConfusionMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXi counts;  // rows = true, cols = predicted

  long long total() const { return counts.sum(); }
};

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& label_order);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;  // false: class never predicted, 0 by convention
  bool recall_defined = true;     // false: class absent from y_true
};

// Macro values are unweighted means over classes.
struct MetricsReport {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::string> labels;
  std::vector<ClassMetrics> per_class;
  bool has_undefined_precision = false;
};

MetricsReport metrics(const ConfusionMatrix& matrix);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) -> (1,1)
  double auc = 0.0;
};

// Threshold sweep over distinct scores descending, tied scores grouped into
// one step; AUC by the trapezoidal rule (equals Mann-Whitney with ties as ½).
RocCurve roc(const std::vector<int>& truths, const std::vector<double>& scores);

// One-vs-rest curve per label present in y_true with both outcomes.
std::vector<std::pair<std::string, RocCurve>> roc_ovr(
    const std::vector<std::string>& y_true, const Matrix& scores,
    const std::vector<std::string>& label_order);

struct RegressionMetrics {
  double mse = 0.0;
  double r_squared = 0.0;
};

RegressionMetrics regression_metrics(const std::vector<double>& y_true,
                                     const std::vector<double>& y_pred);

using ParamMap = std::map<std::string, double>;

// Scores one (config, fold) pair: train on train_idx, score on val_idx.
using FoldScorer = std::function<double(
    const ParamMap&, const std::vector<int>& train_idx,
    const std::vector<int>& val_idx)>;

struct KfoldSpec {
  int n = 0;
  int k = 2;
  std::uint64_t seed = 0;
};

struct SearchRow {
  ParamMap params;
  double mean_score = 0.0;
  std::vector<double> fold_scores;
};

struct SearchResult {
  ParamMap best;
  std::vector<SearchRow> table;
};

// Full Cartesian product, the last parameter varying fastest; ties keep the
// first enumerated config.
SearchResult grid_search(
    const std::vector<std::pair<std::string, std::vector<double>>>& space,
    const FoldScorer& scorer, const KfoldSpec& folds);

struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  bool integer = false;  // uniform over {lo, ..., hi} inclusive
};

SearchResult random_search(const std::vector<ParamRange>& space, int n_draws,
                           std::uint64_t seed, const FoldScorer& scorer,
                           const KfoldSpec& folds);

}  // namespace riskminer
