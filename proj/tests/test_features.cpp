#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/features.hpp"

using namespace riskminer;
using Tokens = std::vector<std::string>;

namespace {

std::vector<TokenizedDocument> toy_corpus() {
  return {{"d1", {"risk", "market", "risk"}},
          {"d2", {"risk", "loss"}},
          {"d3", {"risk", "market"}}};
}

}  // namespace

TEST_CASE("vocabulary indices are lexicographic and df counts documents") {
  Vocabulary vocab = build_vocabulary(toy_corpus());
  REQUIRE(vocab.size() == 3);
  CHECK(vocab.tokens == Tokens{"loss", "market", "risk"});
  CHECK(vocab.lookup("loss") == 0);
  CHECK(vocab.lookup("risk") == 2);
  CHECK(vocab.lookup("absent") == -1);
  CHECK(vocab.df == std::vector<int>{1, 2, 3});  // df counts docs, not occurrences
  CHECK(vocab.n_docs == 3);
}

TEST_CASE("vocabulary frequency filters") {
  auto docs = toy_corpus();
  Vocabulary min2 = build_vocabulary(docs, /*min_df=*/2);
  CHECK(min2.tokens == Tokens{"market", "risk"});

  Vocabulary capped = build_vocabulary(docs, 1, /*max_df_ratio=*/0.9);
  CHECK(capped.tokens == Tokens{"loss", "market"});  // risk appears in every doc

  CHECK_THROWS_AS(build_vocabulary({}), Error);
  try {
    build_vocabulary(docs, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyVocabulary);
  }
}

TEST_CASE("bow counts in ascending index order and skips OOV") {
  Vocabulary vocab = build_vocabulary(toy_corpus());
  SparseVector counts = bow({"risk", "unknown", "loss", "risk"}, vocab);
  REQUIRE(counts.entries.size() == 2);
  CHECK(counts.entries[0].first == 0);  // loss
  CHECK(counts.entries[0].second == 1.0);
  CHECK(counts.entries[1].first == 2);  // risk
  CHECK(counts.entries[1].second == 2.0);

  Vector dense = counts.to_dense(3);
  CHECK(dense(0) == 1.0);
  CHECK(dense(1) == 0.0);
  CHECK(dense(2) == 2.0);
}

TEST_CASE("idf uses ln(N/(1+df)) and may go negative") {
  TfidfModel model = fit_idf(build_vocabulary(toy_corpus()));
  // N=3: loss df=1, market df=2, risk df=3
  CHECK(model.idf(0) == doctest::Approx(std::log(3.0 / 2.0)).epsilon(1e-12));
  CHECK(model.idf(0) == doctest::Approx(0.405465).epsilon(1e-6));
  CHECK(model.idf(1) == doctest::Approx(std::log(3.0 / 3.0)).epsilon(1e-12));
  CHECK(model.idf(2) == doctest::Approx(std::log(3.0 / 4.0)).epsilon(1e-12));
  CHECK(model.idf(2) == doctest::Approx(-0.287682).epsilon(1e-6));
}

TEST_CASE("tfidf weights counts by idf and drops exact zeros") {
  TfidfModel model = fit_idf(build_vocabulary(toy_corpus()));
  SparseVector vec = tfidf({"risk", "risk", "loss"}, model);
  REQUIRE(vec.entries.size() == 2);  // market idf==0 never appears; risk/loss kept
  CHECK(vec.entries[0].first == 0);
  CHECK(vec.entries[0].second == doctest::Approx(0.405465).epsilon(1e-6));
  CHECK(vec.entries[1].first == 2);
  CHECK(vec.entries[1].second == doctest::Approx(-0.575364).epsilon(1e-6));

  // a token whose idf is exactly zero produces no entry
  SparseVector only_market = tfidf({"market"}, model);
  CHECK(only_market.entries.empty());
}

TEST_CASE("cosine similarity matches hand values and rejects degenerate input") {
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << 1.0, 1.0;
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.707107).epsilon(1e-6));
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  Vector zero = Vector::Zero(2);
  CHECK_THROWS_AS(cosine_similarity(a, zero), Error);
  try {
    cosine_similarity(a, zero);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }

  Vector c(3);
  c << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(cosine_similarity(a, c), Error);
}

TEST_CASE("fuse_features lays out the dense tfidf block then the embedding") {
  SparseVector sparse;
  sparse.entries = {{1, 2.5}, {3, -1.0}};
  Vector emb(2);
  emb << 9.0, 8.0;
  Vector fused = fuse_features(sparse, 4, emb);
  REQUIRE(fused.size() == 6);
  CHECK(fused(0) == 0.0);
  CHECK(fused(1) == 2.5);
  CHECK(fused(3) == -1.0);
  CHECK(fused(4) == 9.0);
  CHECK(fused(5) == 8.0);

  SparseVector oob;
  oob.entries = {{4, 1.0}};
  CHECK_THROWS_AS(fuse_features(oob, 4, emb), Error);
}
