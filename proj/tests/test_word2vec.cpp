#include <doctest.h>

#include <cmath>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/features.hpp"
#include "riskminer/word2vec.hpp"
#include "support/synthetic.hpp"

using namespace riskminer;

namespace {

bool same_bits(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

Word2VecConfig small_config(W2vMode mode, std::uint64_t seed) {
  Word2VecConfig config;
  config.mode = mode;
  config.dim = 16;
  config.window = 3;
  config.negatives = 4;
  config.epochs = 4;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("word2vec validates its configuration") {
  auto docs = synthetic::planted_pair_docs(20, 30, 10, 1);
  Word2VecConfig config = small_config(W2vMode::skipgram, 1);

  config.dim = 0;
  CHECK_THROWS_AS(train_word2vec(docs, config), Error);
  config = small_config(W2vMode::skipgram, 1);
  config.window = 0;
  CHECK_THROWS_AS(train_word2vec(docs, config), Error);
  config = small_config(W2vMode::skipgram, 1);
  config.negatives = -1;
  CHECK_THROWS_AS(train_word2vec(docs, config), Error);
  config = small_config(W2vMode::skipgram, 1);
  config.initial_lr = 0.0;
  CHECK_THROWS_AS(train_word2vec(docs, config), Error);

  try {
    train_word2vec({{"only", {"word"}}}, small_config(W2vMode::skipgram, 1));
    FAIL("single-token corpus must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorpusTooSmall);
  }
}

TEST_CASE("word2vec is bit-deterministic for a fixed seed") {
  auto docs = synthetic::planted_pair_docs(30, 40, 12, 7);
  auto config = small_config(W2vMode::skipgram, 11);
  EmbeddingModel a = train_word2vec(docs, config);
  EmbeddingModel b = train_word2vec(docs, config);
  CHECK(same_bits(a.input_vectors, b.input_vectors));
  CHECK(same_bits(a.output_vectors, b.output_vectors));
  CHECK(a.epoch_losses == b.epoch_losses);

  config.seed = 12;
  EmbeddingModel c = train_word2vec(docs, config);
  CHECK(!same_bits(a.input_vectors, c.input_vectors));
}

TEST_CASE("skip-gram pulls the planted pair together") {
  auto docs = synthetic::planted_pair_docs(120, 40, 30, 3);
  EmbeddingModel model = train_word2vec(docs, small_config(W2vMode::skipgram, 5));
  int ia = model.vocab.lookup("pair_a");
  int ib = model.vocab.lookup("pair_b");
  REQUIRE(ia >= 0);
  REQUIRE(ib >= 0);
  Vector va = model.input_vectors.row(ia);
  Vector vb = model.input_vectors.row(ib);
  double planted = cosine_similarity(va, vb);

  // mean similarity of 100 random vocabulary pairs as the baseline
  Rng rng(17);
  const auto v_size = static_cast<std::uint64_t>(model.vocab.size());
  double baseline = 0.0;
  int n = 0;
  while (n < 100) {
    int u = static_cast<int>(rng.below(v_size));
    int v = static_cast<int>(rng.below(v_size));
    if (u == v) continue;
    Vector vu = model.input_vectors.row(u);
    Vector vv = model.input_vectors.row(v);
    baseline += cosine_similarity(vu, vv);
    ++n;
  }
  baseline /= n;
  CHECK(planted > baseline + 0.2);
}

TEST_CASE("cbow trains and differs from skip-gram") {
  auto docs = synthetic::planted_pair_docs(40, 30, 10, 9);
  EmbeddingModel sg = train_word2vec(docs, small_config(W2vMode::skipgram, 2));
  EmbeddingModel cb = train_word2vec(docs, small_config(W2vMode::cbow, 2));
  CHECK(!same_bits(sg.input_vectors, cb.input_vectors));
  CHECK(cb.dim == 16);
  CHECK(cb.input_vectors.rows() == cb.vocab.size());
}

TEST_CASE("epoch losses are one finite mean per epoch") {
  auto docs = synthetic::planted_pair_docs(40, 30, 10, 4);
  auto config = small_config(W2vMode::skipgram, 6);
  EmbeddingModel model = train_word2vec(docs, config);
  REQUIRE(static_cast<int>(model.epoch_losses.size()) == config.epochs);
  for (double loss : model.epoch_losses) {
    CHECK(std::isfinite(loss));
    CHECK(loss > 0.0);
  }
  // training should reduce the loss overall
  CHECK(model.epoch_losses.back() < model.epoch_losses.front());
}

TEST_CASE("doc_embedding averages rows and zeroes out on full OOV") {
  auto docs = synthetic::planted_pair_docs(20, 30, 10, 2);
  EmbeddingModel model = train_word2vec(docs, small_config(W2vMode::skipgram, 8));
  Vector one = doc_embedding({"pair_a"}, model);
  Vector two = doc_embedding({"pair_a", "pair_b"}, model);
  int ia = model.vocab.lookup("pair_a");
  int ib = model.vocab.lookup("pair_b");
  Vector expect = (model.input_vectors.row(ia) + model.input_vectors.row(ib)) / 2.0;
  CHECK((two - expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(one.size() == model.dim);

  Vector oov = doc_embedding({"definitely", "not", "present"}, model);
  CHECK(oov.isZero(0.0));
  // OOV tokens are skipped, not averaged in
  Vector mixed = doc_embedding({"pair_a", "notpresent"}, model);
  Vector only_a = model.input_vectors.row(ia);
  CHECK((mixed - only_a).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}
