#include "riskminer/svm.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "riskminer/error.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

namespace {

std::vector<std::string> sorted_distinct(const std::vector<std::string>& labels) {
  std::vector<std::string> out(labels);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

LinearSvmModel train_svm(const Matrix& x, const std::vector<std::string>& labels,
                         const SvmConfig& config) {
  if (!(config.lambda > 0.0) || config.epochs < 1)
    fail(ErrorCode::InvalidConfig, "svm config out of range");
  if (config.full_batch && !(config.step > 0.0))
    fail(ErrorCode::InvalidConfig, "full-batch mode needs a positive step");
  if (static_cast<std::size_t>(x.rows()) != labels.size())
    fail(ErrorCode::LengthMismatch, "rows and labels differ in length");

  LinearSvmModel model;
  model.labels = sorted_distinct(labels);
  if (model.labels.size() < 2)
    fail(ErrorCode::SingleClass, "need at least 2 classes");

  const int n = static_cast<int>(x.rows());
  const int f = static_cast<int>(x.cols());
  const int c = static_cast<int>(model.labels.size());
  model.lambda = config.lambda;
  model.weights = Matrix::Zero(c, f);
  model.bias = Vector::Zero(c);

  std::map<std::string, int> class_index;
  for (int ci = 0; ci < c; ++ci) class_index[model.labels[ci]] = ci;
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) y[i] = class_index[labels[i]];

  if (config.full_batch) {
    model.objective_history.push_back(svm_objective(model, x, labels));
    Vector w_grad(f);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (int ci = 0; ci < c; ++ci) {
        w_grad = 2.0 * config.lambda * model.weights.row(ci).transpose();
        double b_grad = 2.0 * config.lambda * model.bias[ci];
        for (int i = 0; i < n; ++i) {
          const double yi = (y[i] == ci) ? 1.0 : -1.0;
          const double margin =
              yi * (model.weights.row(ci).dot(x.row(i)) + model.bias[ci]);
          if (margin < 1.0) {
            w_grad -= (yi / n) * x.row(i).transpose();
            b_grad -= yi / n;
          }
        }
        model.weights.row(ci) -= config.step * w_grad.transpose();
        model.bias[ci] -= config.step * b_grad;
      }
      model.objective_history.push_back(svm_objective(model, x, labels));
    }
    return model;
  }

  // Pegasos: per-class passes with per-epoch seeded shuffles, step 1/(lambda t)
  Rng root(config.seed);
  for (int ci = 0; ci < c; ++ci) {
    Rng rng = root.split(static_cast<std::uint64_t>(ci));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    long long t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      rng.shuffle(order);
      for (int i : order) {
        ++t;
        const double eta = 1.0 / (config.lambda * static_cast<double>(t));
        const double yi = (y[i] == ci) ? 1.0 : -1.0;
        const double margin =
            yi * (model.weights.row(ci).dot(x.row(i)) + model.bias[ci]);
        const double shrink = 1.0 - eta * config.lambda;
        model.weights.row(ci) *= shrink;
        model.bias[ci] *= shrink;
        if (margin < 1.0) {
          model.weights.row(ci) += eta * yi * x.row(i);
          model.bias[ci] += eta * yi;
        }
      }
    }
  }
  return model;
}

double svm_objective(const LinearSvmModel& model, const Matrix& x,
                     const std::vector<std::string>& labels) {
  if (static_cast<std::size_t>(x.rows()) != labels.size())
    fail(ErrorCode::LengthMismatch, "rows and labels differ in length");
  std::map<std::string, int> class_index;
  for (std::size_t ci = 0; ci < model.labels.size(); ++ci)
    class_index[model.labels[ci]] = static_cast<int>(ci);

  double objective = 0.0;
  for (std::size_t ci = 0; ci < model.labels.size(); ++ci) {
    objective += model.lambda * (model.weights.row(ci).squaredNorm() +
                                 model.bias[ci] * model.bias[ci]);
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const auto it = class_index.find(labels[i]);
      if (it == class_index.end())
        fail(ErrorCode::UnknownLabel, "label '" + labels[i] + "'");
      const double yi = (it->second == static_cast<int>(ci)) ? 1.0 : -1.0;
      const double margin =
          yi * (model.weights.row(ci).dot(x.row(i)) + model.bias[ci]);
      hinge += std::max(0.0, 1.0 - margin);
    }
    objective += hinge / static_cast<double>(x.rows());
  }
  return objective;
}

std::pair<std::string, Vector> predict_svm(const LinearSvmModel& model,
                                           const Vector& x) {
  if (x.size() != model.weights.cols())
    fail(ErrorCode::DimensionMismatch, "feature vector of length " +
                                           std::to_string(x.size()) + ", expected " +
                                           std::to_string(model.weights.cols()));
  Vector margins = model.weights * x + model.bias;
  int best = 0;
  for (int ci = 1; ci < margins.size(); ++ci)
    if (margins[ci] > margins[best]) best = ci;
  return {model.labels[best], margins};
}

}  // namespace riskminer
