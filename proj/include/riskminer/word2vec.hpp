#pragma once

#include <cstdint>
#include <vector>

#include "riskminer/features.hpp"

namespace riskminer {

enum class W2vMode { skipgram, cbow };

struct Word2VecConfig {
  W2vMode mode = W2vMode::skipgram;
  int dim = 50;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double initial_lr = 0.025;
  std::uint64_t seed = 0;
};

struct EmbeddingModel {
  Vocabulary vocab;
  int dim = 0;
  Matrix input_vectors;   // V x dim, the published embeddings
  Matrix output_vectors;  // V x dim, training-internal context weights
  std::vector<double> epoch_losses;  // mean negative-sampling loss per epoch
};

// Single-threaded skip-gram / CBOW with negative sampling: noise distribution
// proportional to unigram^0.75, learning rate decaying linearly to 10% of the
// initial value. Bit-deterministic given (corpus, config).
EmbeddingModel train_word2vec(const std::vector<TokenizedDocument>& docs,
                              const Word2VecConfig& config);

// Mean of the input vectors of in-vocabulary tokens; zero vector when none.
Vector doc_embedding(const std::vector<std::string>& tokens,
                     const EmbeddingModel& model);

}  // namespace riskminer
