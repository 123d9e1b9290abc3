#include "riskminer/nn.hpp"

#include <algorithm>
#include <cmath>

namespace riskminer {

double activation(ActivationKind kind, double x) {
  switch (kind) {
    case ActivationKind::relu:
      return x > 0.0 ? x : 0.0;
    case ActivationKind::sigmoid:
      return 1.0 / (1.0 + std::exp(-x));
    case ActivationKind::tanh:
      return std::tanh(x);
  }
  return x;
}

Vector activation(ActivationKind kind, const Vector& x) {
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = activation(kind, x[i]);
  return y;
}

namespace {

void check_distribution(const Vector& p, const char* what) {
  if (p.size() == 0) fail(ErrorCode::NotADistribution, std::string(what) + " is empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0))
      fail(ErrorCode::NotADistribution, std::string(what) + " has a negative entry");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-6)
    fail(ErrorCode::NotADistribution, std::string(what) + " does not sum to 1");
}

}  // namespace

double loss(LossKind kind, const Vector& prediction, const Vector& target) {
  if (kind == LossKind::mse) {
    if (prediction.size() != target.size() || prediction.size() == 0)
      fail(ErrorCode::ShapeMismatch, "mse over unequal lengths");
    return (prediction - target).squaredNorm() / prediction.size();
  }
  if (prediction.size() != target.size())
    fail(ErrorCode::ShapeMismatch, "cross entropy over unequal lengths");
  check_distribution(prediction, "prediction");
  check_distribution(target, "target");
  double ce = 0.0;
  for (Eigen::Index i = 0; i < prediction.size(); ++i) {
    if (target[i] == 0.0) continue;
    ce -= target[i] * std::log(std::max(prediction[i], 1e-12));
  }
  return ce;
}

double loss(LossKind kind, const Vector& prediction, int target_class) {
  if (kind == LossKind::mse)
    fail(ErrorCode::InvalidConfig, "mse needs a target vector");
  check_distribution(prediction, "prediction");
  if (target_class < 0 || target_class >= prediction.size())
    fail(ErrorCode::IndexOutOfRange, "target class " + std::to_string(target_class));
  return -std::log(std::max(prediction[target_class], 1e-12));
}

Vector softmax(const Vector& logits) {
  const double peak = logits.maxCoeff();
  Vector p = (logits.array() - peak).exp().matrix();
  return p / p.sum();
}

void validate_optimizer(const OptimizerConfig& config) {
  const bool betas_ok = config.beta1 > 0.0 && config.beta1 < 1.0 &&
                        config.beta2 > 0.0 && config.beta2 < 1.0;
  if (!(config.lr > 0.0) || !betas_ok || !(config.eps > 0.0) ||
      !(config.decay > 0.0 && config.decay < 1.0))
    fail(ErrorCode::InvalidConfig, "optimizer config out of range");
}

void optimizer_step(const OptimizerConfig& config, std::vector<Matrix>& params,
                    const std::vector<Matrix>& grads, OptimizerState& state) {
  validate_optimizer(config);
  if (params.size() != grads.size())
    fail(ErrorCode::ShapeMismatch, "params/grads block counts differ");
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i].rows() != grads[i].rows() || params[i].cols() != grads[i].cols())
      fail(ErrorCode::ShapeMismatch, "params/grads shapes differ at block " +
                                         std::to_string(i));

  if (state.m.empty()) {
    for (const auto& p : params) {
      state.m.push_back(Matrix::Zero(p.rows(), p.cols()));
      state.v.push_back(Matrix::Zero(p.rows(), p.cols()));
    }
  }
  if (state.m.size() != params.size() || state.v.size() != params.size())
    fail(ErrorCode::ShapeMismatch, "optimizer state does not match params");
  for (std::size_t i = 0; i < params.size(); ++i)
    if (state.m[i].rows() != params[i].rows() || state.m[i].cols() != params[i].cols())
      fail(ErrorCode::ShapeMismatch, "optimizer state shape differs at block " +
                                         std::to_string(i));

  ++state.step;
  for (std::size_t i = 0; i < params.size(); ++i)
    optimizer_step_block<double>(config, state.step, params[i], grads[i],
                                 state.m[i], state.v[i]);
}

double penalty(const RegularizationConfig& reg, const Matrix& weights) {
  if (!(reg.l1 >= 0.0) || !(reg.l2 >= 0.0) || !std::isfinite(reg.l1) ||
      !std::isfinite(reg.l2))
    fail(ErrorCode::InvalidConfig, "regularization coefficients out of range");
  return reg.l1 * weights.cwiseAbs().sum() + reg.l2 * weights.squaredNorm();
}

Matrix penalty_subgradient(const RegularizationConfig& reg, const Matrix& weights) {
  if (!(reg.l1 >= 0.0) || !(reg.l2 >= 0.0) || !std::isfinite(reg.l1) ||
      !std::isfinite(reg.l2))
    fail(ErrorCode::InvalidConfig, "regularization coefficients out of range");
  Matrix g = 2.0 * reg.l2 * weights;
  if (reg.l1 != 0.0) {
    for (Eigen::Index i = 0; i < weights.rows(); ++i)
      for (Eigen::Index j = 0; j < weights.cols(); ++j)
        if (weights(i, j) != 0.0)
          g(i, j) += weights(i, j) > 0.0 ? reg.l1 : -reg.l1;
  }
  return g;
}

}  // namespace riskminer
