#include "riskminer/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "riskminer/error.hpp"

namespace riskminer {

NBModel train_nb(const std::vector<SparseVector>& bows,
                 const std::vector<std::string>& labels, int vocab_size,
                 double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidConfig, "smoothing alpha must be > 0");
  if (vocab_size < 1) fail(ErrorCode::InvalidConfig, "vocabulary size must be >= 1");
  if (bows.size() != labels.size())
    fail(ErrorCode::LengthMismatch, "bows and labels differ in length");
  if (bows.empty()) fail(ErrorCode::EmptyClass, "no training documents");

  std::map<std::string, int> class_index;
  for (const auto& label : labels) class_index.emplace(label, 0);
  int next = 0;
  for (auto& [label, index] : class_index) index = next++;
  const int c = static_cast<int>(class_index.size());

  NBModel model;
  model.labels.resize(c);
  for (const auto& [label, index] : class_index) model.labels[index] = label;
  model.alpha = alpha;
  model.vocab_size = vocab_size;

  std::vector<long long> docs_per_class(c, 0);
  Matrix counts = Matrix::Zero(c, vocab_size);
  for (std::size_t i = 0; i < bows.size(); ++i) {
    const int ci = class_index[labels[i]];
    ++docs_per_class[ci];
    for (const auto& [index, value] : bows[i].entries) {
      if (index < 0 || index >= vocab_size)
        fail(ErrorCode::DimensionMismatch, "bow index outside vocabulary");
      counts(ci, index) += value;
    }
  }

  model.log_prior.resize(c);
  model.log_likelihood.resize(c, vocab_size);
  for (int ci = 0; ci < c; ++ci) {
    model.log_prior[ci] = std::log(static_cast<double>(docs_per_class[ci]) /
                                   static_cast<double>(bows.size()));
    const double total = counts.row(ci).sum() + alpha * vocab_size;
    for (int t = 0; t < vocab_size; ++t)
      model.log_likelihood(ci, t) = std::log((counts(ci, t) + alpha) / total);
  }
  return model;
}

std::pair<std::string, Vector> predict_nb(const NBModel& model,
                                          const SparseVector& bow_vec) {
  Vector scores = model.log_prior;
  for (const auto& [index, value] : bow_vec.entries) {
    if (index < 0 || index >= model.vocab_size)
      fail(ErrorCode::DimensionMismatch, "bow index outside vocabulary");
    scores += value * model.log_likelihood.col(index);
  }
  int best = 0;
  for (int ci = 1; ci < scores.size(); ++ci)
    if (scores[ci] > scores[best]) best = ci;  // ties keep the smaller label
  return {model.labels[best], scores};
}

}  // namespace riskminer
