#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/features.hpp"

namespace riskminer {

struct SvmConfig {
  double lambda = 1e-3;
  int epochs = 50;
  std::uint64_t seed = 0;
  // Full-batch subgradient descent at a constant step: slower but has a
  // non-increasing objective at small steps, which tests rely on.
  bool full_batch = false;
  double step = 0.0;  // required > 0 when full_batch
};

// One-vs-rest linear SVM minimizing lambda*||w||^2 + mean hinge per class.
// The bias is folded into the regularized weights (constant-feature view), so
// the 1/(lambda*t) schedule keeps every parameter stable from the first step.
struct LinearSvmModel {
  std::vector<std::string> labels;  // sorted distinct
  Matrix weights;                   // labels x features
  Vector bias;
  double lambda = 0.0;
  std::vector<double> objective_history;  // full-batch mode, entry per epoch edge
};

LinearSvmModel train_svm(const Matrix& x, const std::vector<std::string>& labels,
                         const SvmConfig& config);

// Sum over classes of lambda*(||w_c||^2 + b_c^2) + mean hinge of the OvR
// problem.
double svm_objective(const LinearSvmModel& model, const Matrix& x,
                     const std::vector<std::string>& labels);

// (argmax-margin label, per-class margins); ties go to the lexicographically
// smaller label.
std::pair<std::string, Vector> predict_svm(const LinearSvmModel& model,
                                           const Vector& x);

}  // namespace riskminer
