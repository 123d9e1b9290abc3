#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/features.hpp"

namespace riskminer {

enum class ActivationKind { relu, sigmoid, tanh };
enum class LossKind { mse, cross_entropy };
enum class OptimizerKind { sgd, adam, rmsprop };

double activation(ActivationKind kind, double x);
Vector activation(ActivationKind kind, const Vector& x);

// mse: mean squared componentwise error. cross_entropy: -sum target_i ln p_i
// with p clamped to >= 1e-12; prediction must be a distribution.
double loss(LossKind kind, const Vector& prediction, const Vector& target);
double loss(LossKind kind, const Vector& prediction, int target_class);

Vector softmax(const Vector& logits);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::sgd;
  double lr = 0.01;
  double beta1 = 0.9;   // adam
  double beta2 = 0.999;  // adam
  double eps = 1e-8;     // adam / rmsprop
  double decay = 0.9;    // rmsprop
};

// One moment-accumulator pair per parameter block; step counts update calls.
template <typename Scalar>
struct OptimizerStateT {
  long long step = 0;
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> m;
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> v;
};
using OptimizerState = OptimizerStateT<double>;

void validate_optimizer(const OptimizerConfig& config);

// Single-block update at 1-based step `step` (sized/zeroed accumulators).
template <typename Scalar>
void optimizer_step_block(
    const OptimizerConfig& config, long long step,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& param,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& grad,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& v) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  switch (config.kind) {
    case OptimizerKind::sgd:
      param -= Scalar(config.lr) * grad;
      break;
    case OptimizerKind::adam: {
      m = Scalar(config.beta1) * m + Scalar(1.0 - config.beta1) * grad;
      v = Scalar(config.beta2) * v +
          Scalar(1.0 - config.beta2) * grad.cwiseProduct(grad);
      const Scalar m_corr = Scalar(1) - Scalar(std::pow(config.beta1, static_cast<double>(step)));
      const Scalar v_corr = Scalar(1) - Scalar(std::pow(config.beta2, static_cast<double>(step)));
      const Mat m_hat = m / m_corr;
      const Mat v_hat = v / v_corr;
      param -= Scalar(config.lr) *
               m_hat.cwiseQuotient(v_hat.cwiseSqrt() +
                                   Mat::Constant(param.rows(), param.cols(),
                                                 Scalar(config.eps)));
      break;
    }
    case OptimizerKind::rmsprop: {
      v = Scalar(config.decay) * v +
          Scalar(1.0 - config.decay) * grad.cwiseProduct(grad);
      param -= Scalar(config.lr) *
               grad.cwiseQuotient(v.cwiseSqrt() +
                                  Mat::Constant(param.rows(), param.cols(),
                                                Scalar(config.eps)));
      break;
    }
  }
}

// Updates every block in place; state is sized on first use.
void optimizer_step(const OptimizerConfig& config, std::vector<Matrix>& params,
                    const std::vector<Matrix>& grads, OptimizerState& state);

struct RegularizationConfig {
  double l1 = 0.0;
  double l2 = 0.0;
};

// l1 * sum|w| + l2 * sum w^2
double penalty(const RegularizationConfig& reg, const Matrix& weights);

// d penalty / d w = l1 * sign(w) + 2 l2 * w (sign(0) taken as 0)
Matrix penalty_subgradient(const RegularizationConfig& reg, const Matrix& weights);

}  // namespace riskminer
