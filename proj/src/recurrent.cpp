#include "riskminer/recurrent.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace riskminer {

RecurrentModel train_recurrent(const std::vector<std::vector<int>>& sequences,
                               const std::vector<std::string>& labels,
                               int vocab_size, const RecurrentConfig& config) {
  if (config.hidden < 1 || config.dim < 1 || config.t_max < 1 ||
      config.epochs < 1 || !(config.clip_norm > 0.0) || config.l2 < 0.0 ||
      vocab_size < 1)
    fail(ErrorCode::InvalidConfig, "recurrent config out of range");
  validate_optimizer(config.optimizer);
  if (sequences.size() != labels.size())
    fail(ErrorCode::LengthMismatch, "sequences and labels differ in length");
  if (sequences.empty()) fail(ErrorCode::EmptyInput, "no training sequences");
  for (std::size_t i = 0; i < sequences.size(); ++i)
    if (sequences[i].empty())
      fail(ErrorCode::EmptySequence, "sequence " + std::to_string(i) + " is empty");

  std::vector<std::string> sorted(labels);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<std::string, int> class_index;
  for (std::size_t c = 0; c < sorted.size(); ++c)
    class_index[sorted[c]] = static_cast<int>(c);
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = class_index[labels[i]];

  Rng rng(config.seed);
  RecurrentModel model =
      init_recurrent<double>(config.kind, vocab_size, config.dim, config.hidden,
                             sorted, config.t_max, rng);

  std::array<Matrix*, 6> params = {&model.embedding, &model.w_x, &model.w_h,
                                   &model.b,         &model.w_out, &model.b_out};
  std::vector<Matrix> m, v;
  for (Matrix* p : params) {
    m.push_back(Matrix::Zero(p->rows(), p->cols()));
    v.push_back(Matrix::Zero(p->rows(), p->cols()));
  }
  long long step = 0;

  std::vector<int> order(sequences.size());
  std::iota(order.begin(), order.end(), 0);
  RecurrentGradsT<double> grads;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (int i : order) {
      epoch_loss +=
          recurrent_loss_grads(model, sequences[i], y[i], config.l2, &grads);

      std::array<Matrix*, 6> gs = {&grads.embedding, &grads.w_x, &grads.w_h,
                                   &grads.b,         &grads.w_out, &grads.b_out};
      double norm_sq = 0.0;
      for (Matrix* g : gs) norm_sq += g->squaredNorm();
      const double norm = std::sqrt(norm_sq);
      if (norm > config.clip_norm) {
        const double scale = config.clip_norm / norm;
        for (Matrix* g : gs) *g *= scale;
      }

      ++step;
      for (std::size_t block = 0; block < params.size(); ++block)
        optimizer_step_block<double>(config.optimizer, step, *params[block],
                                     *gs[block], m[block], v[block]);
    }
    model.epoch_losses.push_back(epoch_loss / static_cast<double>(sequences.size()));
  }
  return model;
}

std::pair<std::string, Vector> predict_recurrent(const RecurrentModel& model,
                                                 const std::vector<int>& sequence) {
  Vector probs = recurrent_probs(model, sequence);
  int best = 0;
  for (int c = 1; c < probs.size(); ++c)
    if (probs[c] > probs[best]) best = c;
  return {model.labels[best], probs};
}

}  // namespace riskminer
