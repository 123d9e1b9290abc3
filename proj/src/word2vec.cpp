#include "riskminer/word2vec.hpp"

#include <algorithm>
#include <cmath>

#include "riskminer/error.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_loss(double p) { return -std::log(std::max(p, 1e-12)); }

// Cumulative unigram^0.75 table; sampled by binary search over a uniform draw.
class NoiseTable {
 public:
  NoiseTable(const std::vector<long long>& counts) {
    cumulative_.reserve(counts.size());
    double total = 0.0;
    for (long long c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
  }

  // Never returns `exclude`; falls back deterministically if rejection stalls.
  int sample(Rng& rng, int exclude) const {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const double u = rng.uniform() * cumulative_.back();
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      int idx = static_cast<int>(it - cumulative_.begin());
      if (idx >= static_cast<int>(cumulative_.size()))
        idx = static_cast<int>(cumulative_.size()) - 1;
      if (idx != exclude) return idx;
    }
    return (exclude + 1) % static_cast<int>(cumulative_.size());
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

EmbeddingModel train_word2vec(const std::vector<TokenizedDocument>& docs,
                              const Word2VecConfig& config) {
  if (config.dim < 1 || config.window < 1 || config.negatives < 1 ||
      config.epochs < 1 || !(config.initial_lr > 0.0))
    fail(ErrorCode::InvalidConfig, "word2vec config out of range");
  if (docs.empty()) fail(ErrorCode::CorpusTooSmall, "no documents");

  const Vocabulary vocab = build_vocabulary(docs);
  const int v = vocab.size();
  if (v < 2)
    fail(ErrorCode::CorpusTooSmall, "negative sampling needs at least 2 distinct tokens");

  std::vector<std::vector<int>> sequences;
  sequences.reserve(docs.size());
  long long total_tokens = 0;
  std::vector<long long> counts(v, 0);
  for (const auto& doc : docs) {
    std::vector<int> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& token : doc.tokens) {
      const int id = vocab.lookup(token);
      ids.push_back(id);
      ++counts[id];
    }
    total_tokens += static_cast<long long>(ids.size());
    sequences.push_back(std::move(ids));
  }
  if (total_tokens < config.window + 1)
    fail(ErrorCode::CorpusTooSmall, "corpus smaller than one context window");

  EmbeddingModel model;
  model.vocab = vocab;
  model.dim = config.dim;
  model.input_vectors.resize(v, config.dim);
  model.output_vectors = Matrix::Zero(v, config.dim);

  Rng rng(config.seed);
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < config.dim; ++j)
      model.input_vectors(i, j) = (rng.uniform() - 0.5) / config.dim;

  const NoiseTable noise(counts);
  const double total_positions =
      static_cast<double>(config.epochs) * static_cast<double>(total_tokens);
  long long processed = 0;

  Vector hidden(config.dim), accum(config.dim);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    long long pairs = 0;

    for (const auto& ids : sequences) {
      const int len = static_cast<int>(ids.size());
      for (int center = 0; center < len; ++center) {
        const double lr =
            config.initial_lr *
            std::max(0.1, 1.0 - 0.9 * static_cast<double>(processed) / total_positions);
        ++processed;

        const int lo = std::max(0, center - config.window);
        const int hi = std::min(len - 1, center + config.window);

        if (config.mode == W2vMode::skipgram) {
          const int word = ids[center];
          for (int pos = lo; pos <= hi; ++pos) {
            if (pos == center) continue;
            const int context = ids[pos];
            accum.setZero();
            for (int k = 0; k <= config.negatives; ++k) {
              const bool positive = (k == 0);
              const int target = positive ? context : noise.sample(rng, context);
              const double score =
                  model.input_vectors.row(word).dot(model.output_vectors.row(target));
              const double f = sigmoid(score);
              epoch_loss += positive ? log_loss(f) : log_loss(1.0 - f);
              const double g = ((positive ? 1.0 : 0.0) - f) * lr;
              accum += g * model.output_vectors.row(target).transpose();
              model.output_vectors.row(target) +=
                  g * model.input_vectors.row(word);
            }
            model.input_vectors.row(word) += accum.transpose();
            ++pairs;
          }
        } else {  // cbow
          int context_count = 0;
          hidden.setZero();
          for (int pos = lo; pos <= hi; ++pos) {
            if (pos == center) continue;
            hidden += model.input_vectors.row(ids[pos]).transpose();
            ++context_count;
          }
          if (context_count == 0) continue;
          hidden /= context_count;

          const int word = ids[center];
          accum.setZero();
          for (int k = 0; k <= config.negatives; ++k) {
            const bool positive = (k == 0);
            const int target = positive ? word : noise.sample(rng, word);
            const double f = sigmoid(hidden.dot(model.output_vectors.row(target)));
            epoch_loss += positive ? log_loss(f) : log_loss(1.0 - f);
            const double g = ((positive ? 1.0 : 0.0) - f) * lr;
            accum += g * model.output_vectors.row(target).transpose();
            model.output_vectors.row(target) += g * hidden.transpose();
          }
          for (int pos = lo; pos <= hi; ++pos) {
            if (pos == center) continue;
            model.input_vectors.row(ids[pos]) += accum.transpose();
          }
          ++pairs;
        }
      }
    }
    model.epoch_losses.push_back(pairs > 0 ? epoch_loss / pairs : 0.0);
  }
  return model;
}

Vector doc_embedding(const std::vector<std::string>& tokens,
                     const EmbeddingModel& model) {
  Vector mean = Vector::Zero(model.dim);
  int found = 0;
  for (const auto& token : tokens) {
    const int id = model.vocab.lookup(token);
    if (id < 0) continue;
    mean += model.input_vectors.row(id).transpose();
    ++found;
  }
  if (found > 0) mean /= found;
  return mean;
}

}  // namespace riskminer
