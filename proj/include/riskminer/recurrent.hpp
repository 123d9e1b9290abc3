#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/nn.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

enum class RecurrentKind { rnn, lstm };

struct RecurrentConfig {
  RecurrentKind kind = RecurrentKind::lstm;
  int hidden = 32;
  int dim = 32;      // embedding width
  int t_max = 200;   // BPTT truncation, also applied at prediction
  int epochs = 10;
  OptimizerConfig optimizer{OptimizerKind::adam, 0.001};
  double clip_norm = 5.0;
  double l2 = 0.0;
  std::uint64_t seed = 0;
};

// The cell is templated on the scalar so extended-precision gradient checks
// run the exact code path used in double-precision training.
//
// LSTM gate blocks are stacked [forget; input; output; candidate] in w_x,
// w_h, b. Biases are one-column matrices so every parameter block feeds the
// same optimizer interface.
template <typename Scalar>
struct RecurrentModelT {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  RecurrentKind kind = RecurrentKind::lstm;
  int vocab_size = 0;
  int dim = 0;
  int hidden = 0;
  int n_classes = 0;
  int t_max = 200;
  std::vector<std::string> labels;  // sorted distinct

  Mat embedding;  // V x dim
  Mat w_x;        // H x dim (rnn) or 4H x dim (lstm)
  Mat w_h;        // H x H or 4H x H
  Mat b;          // H x 1 or 4H x 1
  Mat w_out;      // C x H
  Mat b_out;      // C x 1

  std::vector<double> epoch_losses;
};

using RecurrentModel = RecurrentModelT<double>;

template <typename Scalar>
struct RecurrentGradsT {
  typename RecurrentModelT<Scalar>::Mat embedding, w_x, w_h, b, w_out, b_out;
};

template <typename Scalar>
RecurrentModelT<Scalar> init_recurrent(RecurrentKind kind, int vocab_size,
                                       int dim, int hidden,
                                       std::vector<std::string> labels,
                                       int t_max, Rng& rng) {
  using Mat = typename RecurrentModelT<Scalar>::Mat;
  RecurrentModelT<Scalar> model;
  model.kind = kind;
  model.vocab_size = vocab_size;
  model.dim = dim;
  model.hidden = hidden;
  model.n_classes = static_cast<int>(labels.size());
  model.t_max = t_max;
  model.labels = std::move(labels);

  const int gates = kind == RecurrentKind::lstm ? 4 * hidden : hidden;
  auto fill_uniform = [&rng](Mat& m, int rows, int cols, double scale) {
    m.resize(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        m(i, j) = static_cast<Scalar>((rng.uniform() * 2.0 - 1.0) * scale);
  };
  fill_uniform(model.embedding, vocab_size, dim, 0.5 / dim);
  fill_uniform(model.w_x, gates, dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  fill_uniform(model.w_h, gates, hidden, 1.0 / std::sqrt(static_cast<double>(hidden)));
  model.b = Mat::Zero(gates, 1);
  if (kind == RecurrentKind::lstm)
    model.b.topRows(hidden).setConstant(Scalar(1));  // open forget gates
  fill_uniform(model.w_out, model.n_classes, hidden,
               1.0 / std::sqrt(static_cast<double>(hidden)));
  model.b_out = Mat::Zero(model.n_classes, 1);
  return model;
}

// Forward pass over at most t_max tokens; empty sequences yield the uniform
// distribution.
template <typename Scalar>
typename RecurrentModelT<Scalar>::Vec recurrent_probs(
    const RecurrentModelT<Scalar>& model, const std::vector<int>& sequence) {
  using Vec = typename RecurrentModelT<Scalar>::Vec;
  const int h = model.hidden;
  const int t_len = std::min<int>(static_cast<int>(sequence.size()), model.t_max);

  if (t_len == 0)
    return Vec::Constant(model.n_classes, Scalar(1) / Scalar(model.n_classes));

  Vec hidden = Vec::Zero(h), cell = Vec::Zero(h);
  for (int t = 0; t < t_len; ++t) {
    const int token = sequence[t];
    if (token < 0 || token >= model.vocab_size)
      fail(ErrorCode::IndexOutOfRange, "token id " + std::to_string(token));
    const Vec e = model.embedding.row(token).transpose();
    Vec z = model.w_x * e + model.w_h * hidden + model.b.col(0);
    if (model.kind == RecurrentKind::rnn) {
      hidden = z.array().tanh().matrix();
    } else {
      const auto f = (Scalar(1) / (Scalar(1) + (-z.segment(0, h).array()).exp())).matrix().eval();
      const auto i = (Scalar(1) / (Scalar(1) + (-z.segment(h, h).array()).exp())).matrix().eval();
      const auto o = (Scalar(1) / (Scalar(1) + (-z.segment(2 * h, h).array()).exp())).matrix().eval();
      const auto g = z.segment(3 * h, h).array().tanh().matrix().eval();
      cell = f.cwiseProduct(cell) + i.cwiseProduct(g);
      hidden = o.cwiseProduct(cell.array().tanh().matrix());
    }
  }
  Vec logits = model.w_out * hidden + model.b_out.col(0);
  const Scalar peak = logits.maxCoeff();
  Vec p = (logits.array() - peak).exp().matrix();
  return p / p.sum();
}

// Cross-entropy plus l2 * (|w_x|^2 + |w_h|^2 + |w_out|^2); fills unclipped
// analytic gradients of every parameter block when grads is non-null.
template <typename Scalar>
Scalar recurrent_loss_grads(const RecurrentModelT<Scalar>& model,
                            const std::vector<int>& sequence, int target_class,
                            double l2, RecurrentGradsT<Scalar>* grads) {
  using Mat = typename RecurrentModelT<Scalar>::Mat;
  using Vec = typename RecurrentModelT<Scalar>::Vec;
  const int h = model.hidden;
  const int t_len = std::min<int>(static_cast<int>(sequence.size()), model.t_max);
  if (t_len == 0) fail(ErrorCode::EmptySequence, "empty training sequence");
  if (target_class < 0 || target_class >= model.n_classes)
    fail(ErrorCode::UnknownLabel, "class " + std::to_string(target_class));

  // forward, caching per-step activations
  std::vector<Vec> es(t_len), hs(t_len + 1), cs(t_len + 1);
  std::vector<Vec> fs(t_len), is(t_len), os(t_len), gs(t_len);
  hs[0] = Vec::Zero(h);
  cs[0] = Vec::Zero(h);
  for (int t = 0; t < t_len; ++t) {
    const int token = sequence[t];
    if (token < 0 || token >= model.vocab_size)
      fail(ErrorCode::IndexOutOfRange, "token id " + std::to_string(token));
    es[t] = model.embedding.row(token).transpose();
    Vec z = model.w_x * es[t] + model.w_h * hs[t] + model.b.col(0);
    if (model.kind == RecurrentKind::rnn) {
      hs[t + 1] = z.array().tanh().matrix();
      cs[t + 1] = cs[t];
    } else {
      fs[t] = (Scalar(1) / (Scalar(1) + (-z.segment(0, h).array()).exp())).matrix();
      is[t] = (Scalar(1) / (Scalar(1) + (-z.segment(h, h).array()).exp())).matrix();
      os[t] = (Scalar(1) / (Scalar(1) + (-z.segment(2 * h, h).array()).exp())).matrix();
      gs[t] = z.segment(3 * h, h).array().tanh().matrix();
      cs[t + 1] = fs[t].cwiseProduct(cs[t]) + is[t].cwiseProduct(gs[t]);
      hs[t + 1] = os[t].cwiseProduct(cs[t + 1].array().tanh().matrix());
    }
  }

  Vec logits = model.w_out * hs[t_len] + model.b_out.col(0);
  const Scalar peak = logits.maxCoeff();
  const Scalar log_norm = peak + std::log((logits.array() - peak).exp().sum());
  Scalar loss = log_norm - logits[target_class];
  loss += Scalar(l2) * (model.w_x.squaredNorm() + model.w_h.squaredNorm() +
                        model.w_out.squaredNorm());
  if (!grads) return loss;

  grads->embedding = Mat::Zero(model.vocab_size, model.dim);
  grads->w_x = Mat::Zero(model.w_x.rows(), model.w_x.cols());
  grads->w_h = Mat::Zero(model.w_h.rows(), model.w_h.cols());
  grads->b = Mat::Zero(model.b.rows(), 1);
  grads->w_out = Mat::Zero(model.w_out.rows(), model.w_out.cols());
  grads->b_out = Mat::Zero(model.b_out.rows(), 1);

  Vec dlogits = (logits.array() - log_norm).exp().matrix();
  dlogits[target_class] -= Scalar(1);
  grads->w_out = dlogits * hs[t_len].transpose();
  grads->b_out.col(0) = dlogits;

  Vec dh = model.w_out.transpose() * dlogits;
  Vec dc = Vec::Zero(h);
  for (int t = t_len - 1; t >= 0; --t) {
    Vec dz;
    if (model.kind == RecurrentKind::rnn) {
      dz = dh.cwiseProduct(
          (Scalar(1) - hs[t + 1].array().square()).matrix().eval());
    } else {
      const Vec tanh_c = cs[t + 1].array().tanh().matrix();
      const Vec d_o = dh.cwiseProduct(tanh_c);
      dc += dh.cwiseProduct(os[t]).cwiseProduct(
          (Scalar(1) - tanh_c.array().square()).matrix().eval());
      const Vec d_f = dc.cwiseProduct(cs[t]);
      const Vec d_i = dc.cwiseProduct(gs[t]);
      const Vec d_g = dc.cwiseProduct(is[t]);
      dz.resize(4 * h);
      dz.segment(0, h) = d_f.cwiseProduct(fs[t]).cwiseProduct(
          (Scalar(1) - fs[t].array()).matrix().eval());
      dz.segment(h, h) = d_i.cwiseProduct(is[t]).cwiseProduct(
          (Scalar(1) - is[t].array()).matrix().eval());
      dz.segment(2 * h, h) = d_o.cwiseProduct(os[t]).cwiseProduct(
          (Scalar(1) - os[t].array()).matrix().eval());
      dz.segment(3 * h, h) = d_g.cwiseProduct(
          (Scalar(1) - gs[t].array().square()).matrix().eval());
      dc = dc.cwiseProduct(fs[t]);
    }
    grads->w_x += dz * es[t].transpose();
    grads->w_h += dz * hs[t].transpose();
    grads->b.col(0) += dz;
    grads->embedding.row(sequence[t]) +=
        (model.w_x.transpose() * dz).transpose();
    dh = model.w_h.transpose() * dz;
  }

  grads->w_x += Scalar(2 * l2) * model.w_x;
  grads->w_h += Scalar(2 * l2) * model.w_h;
  grads->w_out += Scalar(2 * l2) * model.w_out;
  return loss;
}

// Elman RNN / LSTM classifier trained with per-sequence updates, seeded
// shuffling, and global gradient-norm clipping.
RecurrentModel train_recurrent(const std::vector<std::vector<int>>& sequences,
                               const std::vector<std::string>& labels,
                               int vocab_size, const RecurrentConfig& config);

// (argmax label, class probabilities); empty sequences predict the uniform
// distribution, so the argmax falls on the lexicographically first label.
std::pair<std::string, Vector> predict_recurrent(const RecurrentModel& model,
                                                 const std::vector<int>& sequence);

}  // namespace riskminer
