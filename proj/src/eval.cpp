#include "riskminer/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "riskminer/error.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

namespace {

// floor(r_i * n) plus leftovers by largest fractional remainder, ties in
// declaration order
std::array<int, 3> largest_remainder(int n, const Ratios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.val, ratios.test};
  std::array<int, 3> sizes{};
  std::array<double, 3> fractions{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = r[i] * n;
    sizes[i] = static_cast<int>(std::floor(exact));
    fractions[i] = exact - sizes[i];
    assigned += sizes[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return fractions[a] > fractions[b]; });
  for (int left = n - assigned, i = 0; left > 0; --left, ++i) ++sizes[order[i]];
  return sizes;
}

void append_cut(const std::vector<int>& pool, const std::array<int, 3>& sizes,
                DataSplit& out) {
  auto it = pool.begin();
  out.train.insert(out.train.end(), it, it + sizes[0]);
  it += sizes[0];
  out.val.insert(out.val.end(), it, it + sizes[1]);
  it += sizes[1];
  out.test.insert(out.test.end(), it, it + sizes[2]);
}

}  // namespace

DataSplit split(int n, const Ratios& ratios, std::uint64_t seed,
                const std::vector<std::string>* stratify_labels) {
  if (!(ratios.train > 0.0) || !(ratios.val > 0.0) || !(ratios.test > 0.0) ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9)
    fail(ErrorCode::BadRatios, "ratios must be positive and sum to 1");
  if (n < 3) fail(ErrorCode::TooFewSamples, "need at least 3 samples");
  if (stratify_labels && static_cast<int>(stratify_labels->size()) != n)
    fail(ErrorCode::LengthMismatch, "labels and n differ in length");

  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  Rng rng(seed);
  rng.shuffle(indices);

  DataSplit out;
  if (!stratify_labels) {
    append_cut(indices, largest_remainder(n, ratios), out);
    return out;
  }

  std::map<std::string, std::vector<int>> buckets;  // shuffled order per label
  for (int i : indices) buckets[(*stratify_labels)[i]].push_back(i);
  for (const auto& [label, pool] : buckets)
    append_cut(pool, largest_remainder(static_cast<int>(pool.size()), ratios), out);
  return out;
}

std::vector<std::vector<int>> kfold(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) fail(ErrorCode::BadK, "k must be in [2, n]");
  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  Rng rng(seed);
  rng.shuffle(indices);

  std::vector<std::vector<int>> folds(k);
  const int base = n / k, extra = n % k;
  auto it = indices.begin();
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < extra ? 1 : 0);
    folds[f].assign(it, it + size);
    it += size;
  }
  return folds;
}

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const std::vector<std::string>& label_order) {
  if (y_true.size() != y_pred.size())
    fail(ErrorCode::LengthMismatch, "truth and prediction differ in length");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < label_order.size(); ++i)
    index[label_order[i]] = static_cast<int>(i);

  ConfusionMatrix matrix;
  matrix.labels = label_order;
  matrix.counts = Eigen::MatrixXi::Zero(static_cast<int>(label_order.size()),
                                        static_cast<int>(label_order.size()));
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const auto ti = index.find(y_true[i]);
    const auto pi = index.find(y_pred[i]);
    if (ti == index.end()) fail(ErrorCode::UnknownLabel, "label '" + y_true[i] + "'");
    if (pi == index.end()) fail(ErrorCode::UnknownLabel, "label '" + y_pred[i] + "'");
    ++matrix.counts(ti->second, pi->second);
  }
  return matrix;
}

MetricsReport metrics(const ConfusionMatrix& matrix) {
  const long long total = matrix.total();
  if (total < 1) fail(ErrorCode::EmptyMatrix, "confusion matrix has no samples");

  MetricsReport report;
  report.labels = matrix.labels;
  const int k = static_cast<int>(matrix.labels.size());
  long long trace = 0;
  for (int i = 0; i < k; ++i) trace += matrix.counts(i, i);
  report.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  for (int i = 0; i < k; ++i) {
    const long long col = matrix.counts.col(i).sum();
    const long long row = matrix.counts.row(i).sum();
    const long long diag = matrix.counts(i, i);
    ClassMetrics cm;
    cm.precision_defined = col > 0;
    cm.recall_defined = row > 0;
    cm.precision = col > 0 ? static_cast<double>(diag) / col : 0.0;
    cm.recall = row > 0 ? static_cast<double>(diag) / row : 0.0;
    cm.f1 = (cm.precision + cm.recall) > 0.0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    if (!cm.precision_defined) report.has_undefined_precision = true;
    report.per_class.push_back(cm);
    report.macro_precision += cm.precision;
    report.macro_recall += cm.recall;
    report.macro_f1 += cm.f1;
  }
  report.macro_precision /= k;
  report.macro_recall /= k;
  report.macro_f1 /= k;
  return report;
}

RocCurve roc(const std::vector<int>& truths, const std::vector<double>& scores) {
  if (truths.size() != scores.size())
    fail(ErrorCode::LengthMismatch, "truths and scores differ in length");
  long long positives = 0, negatives = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] != 0 && truths[i] != 1)
      fail(ErrorCode::UnknownLabel, "binary truth must be 0 or 1");
    if (!std::isfinite(scores[i]))
      fail(ErrorCode::MalformedRecord, "non-finite score");
    truths[i] == 1 ? ++positives : ++negatives;
  }
  if (positives == 0 || negatives == 0)
    fail(ErrorCode::SingleClass, "roc needs both outcome classes");

  std::vector<std::pair<double, int>> ranked(truths.size());
  for (std::size_t i = 0; i < truths.size(); ++i)
    ranked[i] = {scores[i], truths[i]};
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  long long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < ranked.size()) {
    const double score = ranked[i].first;
    while (i < ranked.size() && ranked[i].first == score) {
      ranked[i].second == 1 ? ++tp : ++fp;
      ++i;
    }
    curve.points.emplace_back(static_cast<double>(fp) / negatives,
                              static_cast<double>(tp) / positives);
  }

  for (std::size_t p = 1; p < curve.points.size(); ++p) {
    const auto& [x0, y0] = curve.points[p - 1];
    const auto& [x1, y1] = curve.points[p];
    curve.auc += (x1 - x0) * (y0 + y1) / 2.0;
  }
  return curve;
}

std::vector<std::pair<std::string, RocCurve>> roc_ovr(
    const std::vector<std::string>& y_true, const Matrix& scores,
    const std::vector<std::string>& label_order) {
  if (static_cast<std::size_t>(scores.rows()) != y_true.size())
    fail(ErrorCode::LengthMismatch, "scores rows and truths differ in length");
  if (static_cast<std::size_t>(scores.cols()) != label_order.size())
    fail(ErrorCode::LengthMismatch, "scores cols and labels differ in length");

  std::vector<std::pair<std::string, RocCurve>> curves;
  for (std::size_t c = 0; c < label_order.size(); ++c) {
    std::vector<int> truths(y_true.size());
    long long positives = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
      truths[i] = y_true[i] == label_order[c] ? 1 : 0;
      positives += truths[i];
    }
    if (positives == 0 || positives == static_cast<long long>(y_true.size()))
      continue;  // one-vs-rest undefined without both outcomes
    std::vector<double> class_scores(y_true.size());
    for (std::size_t i = 0; i < y_true.size(); ++i)
      class_scores[i] = scores(static_cast<int>(i), static_cast<int>(c));
    curves.emplace_back(label_order[c], roc(truths, class_scores));
  }
  return curves;
}

RegressionMetrics regression_metrics(const std::vector<double>& y_true,
                                     const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size())
    fail(ErrorCode::LengthMismatch, "lengths differ");
  if (y_true.empty()) fail(ErrorCode::EmptyInput, "no samples");

  RegressionMetrics out;
  double ss_res = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    ss_res += d * d;
    mean += y_true[i];
  }
  out.mse = ss_res / static_cast<double>(y_true.size());
  mean /= static_cast<double>(y_true.size());

  double ss_tot = 0.0;
  for (double y : y_true) ss_tot += (y - mean) * (y - mean);
  if (ss_tot == 0.0) fail(ErrorCode::ConstantTarget, "r-squared needs nonconstant target");
  out.r_squared = 1.0 - ss_res / ss_tot;
  return out;
}

namespace {

SearchResult run_search(const std::vector<ParamMap>& configs,
                        const FoldScorer& scorer, const KfoldSpec& spec) {
  const auto folds = kfold(spec.n, spec.k, spec.seed);

  SearchResult result;
  double best_score = 0.0;
  for (const auto& params : configs) {
    SearchRow row;
    row.params = params;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<int> train_idx;
      for (std::size_t g = 0; g < folds.size(); ++g)
        if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
      row.fold_scores.push_back(scorer(params, train_idx, folds[f]));
      row.mean_score += row.fold_scores.back();
    }
    row.mean_score /= static_cast<double>(folds.size());
    if (result.table.empty() || row.mean_score > best_score) {
      best_score = row.mean_score;
      result.best = params;
    }
    result.table.push_back(std::move(row));
  }
  return result;
}

}  // namespace

SearchResult grid_search(
    const std::vector<std::pair<std::string, std::vector<double>>>& space,
    const FoldScorer& scorer, const KfoldSpec& folds) {
  if (space.empty()) fail(ErrorCode::EmptySpace, "empty search space");
  for (const auto& [name, values] : space)
    if (values.empty())
      fail(ErrorCode::EmptySpace, "parameter '" + name + "' has no values");

  // odometer over value indices, last parameter fastest
  std::vector<ParamMap> configs;
  std::vector<std::size_t> at(space.size(), 0);
  while (true) {
    ParamMap params;
    for (std::size_t p = 0; p < space.size(); ++p)
      params[space[p].first] = space[p].second[at[p]];
    configs.push_back(std::move(params));

    std::size_t p = space.size();
    while (p > 0) {
      --p;
      if (++at[p] < space[p].second.size()) break;
      at[p] = 0;
      if (p == 0) return run_search(configs, scorer, folds);
    }
  }
}

SearchResult random_search(const std::vector<ParamRange>& space, int n_draws,
                           std::uint64_t seed, const FoldScorer& scorer,
                           const KfoldSpec& folds) {
  if (space.empty()) fail(ErrorCode::EmptySpace, "empty search space");
  if (n_draws < 1) fail(ErrorCode::InvalidConfig, "need at least one draw");
  for (const auto& range : space)
    if (!(range.lo <= range.hi))
      fail(ErrorCode::InvalidConfig, "parameter '" + range.name + "' has lo > hi");

  Rng rng(seed);
  std::vector<ParamMap> configs;
  configs.reserve(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    ParamMap params;
    for (const auto& range : space) {
      if (range.integer) {
        const auto width =
            static_cast<std::uint64_t>(range.hi - range.lo) + 1;
        params[range.name] = range.lo + static_cast<double>(rng.below(width));
      } else {
        params[range.name] = range.lo + rng.uniform() * (range.hi - range.lo);
      }
    }
    configs.push_back(std::move(params));
  }
  return run_search(configs, scorer, folds);
}

}  // namespace riskminer
