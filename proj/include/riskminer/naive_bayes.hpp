#pragma once

#include <string>
#include <utility>
#include <vector>

#include "riskminer/features.hpp"

namespace riskminer {

// Multinomial Naive Bayes with Laplace smoothing.
struct NBModel {
  std::vector<std::string> labels;  // sorted distinct
  Vector log_prior;                 // per label, class doc frequencies
  Matrix log_likelihood;            // labels x V; exp of each row sums to 1
  double alpha = 1.0;
  int vocab_size = 0;
};

// likelihood(c, t) = (count(c, t) + alpha) / (total(c) + alpha * V)
NBModel train_nb(const std::vector<SparseVector>& bows,
                 const std::vector<std::string>& labels, int vocab_size,
                 double alpha = 1.0);

// (argmax label, per-class log-posterior up to a shared constant); ties go to
// the lexicographically smaller label.
std::pair<std::string, Vector> predict_nb(const NBModel& model,
                                          const SparseVector& bow_vec);

}  // namespace riskminer
