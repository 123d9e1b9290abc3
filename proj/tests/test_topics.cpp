#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/topics.hpp"
#include "support/synthetic.hpp"

using namespace riskminer;

namespace {

// bows + vocab for n short docs over an integer token vocabulary w0..w{V-1}
struct TinyCorpus {
  std::vector<SparseVector> bows;
  Vocabulary vocab;
};

TinyCorpus from_token_ids(const std::vector<std::vector<int>>& docs, int vocab_size) {
  TinyCorpus out;
  out.vocab.n_docs = static_cast<int>(docs.size());
  for (int v = 0; v < vocab_size; ++v) {
    std::string name = "w" + std::string(2 - std::to_string(v).size(), '0') +
                       std::to_string(v);
    out.vocab.index[name] = v;
    out.vocab.tokens.push_back(name);
  }
  out.vocab.df.assign(vocab_size, 1);
  for (const auto& doc : docs) {
    std::vector<int> counts(vocab_size, 0);
    for (int id : doc) ++counts[id];
    SparseVector bow;
    for (int v = 0; v < vocab_size; ++v)
      if (counts[v] > 0) bow.entries.push_back({v, static_cast<double>(counts[v])});
    out.bows.push_back(bow);
  }
  return out;
}

void check_counts(const GibbsLda& chain) {
  const auto& docs = chain.docs();
  const auto& n_dk = chain.doc_topic_counts();
  const auto& n_kw = chain.topic_word_counts();
  const auto& n_k = chain.topic_counts();
  for (std::size_t d = 0; d < docs.size(); ++d) {
    long total = std::accumulate(n_dk[d].begin(), n_dk[d].end(), 0L);
    REQUIRE(total == static_cast<long>(docs[d].size()));
  }
  for (std::size_t k = 0; k < n_kw.size(); ++k) {
    long total = std::accumulate(n_kw[k].begin(), n_kw[k].end(), 0L);
    REQUIRE(total == static_cast<long>(n_k[k]));
  }
}

}  // namespace

TEST_CASE("lda validates config and rejects empty documents") {
  auto corpus = from_token_ids({{0, 1}, {1, 2}}, 3);
  LdaConfig config;
  config.K = 0;
  CHECK_THROWS_AS(fit_lda(corpus.bows, corpus.vocab, config), Error);
  config = LdaConfig{};
  config.iterations = 0;
  CHECK_THROWS_AS(fit_lda(corpus.bows, corpus.vocab, config), Error);
  config = LdaConfig{};
  config.beta = 0.0;
  CHECK_THROWS_AS(fit_lda(corpus.bows, corpus.vocab, config), Error);

  SparseVector empty;
  try {
    fit_lda({corpus.bows[0], empty}, corpus.vocab, LdaConfig{});
    FAIL("empty document must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDocument);
  }
}

TEST_CASE("alpha zero resolves to 50/K") {
  LdaConfig config;
  config.K = 10;
  CHECK(config.resolved_alpha() == doctest::Approx(5.0));
  config.alpha = 0.3;
  CHECK(config.resolved_alpha() == doctest::Approx(0.3));
}

TEST_CASE("gibbs chain conserves counts across sweeps") {
  auto docs = synthetic::two_topic_docs(30, 12, 77);
  LdaConfig config;
  config.K = 4;
  config.seed = 5;
  GibbsLda chain(docs, 20, config);
  check_counts(chain);  // after init
  for (int i = 0; i < 10; ++i) {
    chain.sweep();
    check_counts(chain);
  }
  CHECK(chain.sweeps_done() == 10);
}

TEST_CASE("phi and theta rows are distributions") {
  auto corpus = from_token_ids(synthetic::two_topic_docs(20, 10, 3), 20);
  LdaConfig config;
  config.K = 3;
  config.iterations = 30;
  config.seed = 1;
  TopicModel model = fit_lda(corpus.bows, corpus.vocab, config);
  REQUIRE(model.phi.rows() == 3);
  REQUIRE(model.phi.cols() == 20);
  REQUIRE(model.theta.rows() == 20);
  REQUIRE(model.theta.cols() == 3);
  for (int k = 0; k < 3; ++k)
    CHECK(model.phi.row(k).sum() == doctest::Approx(1.0).epsilon(1e-9));
  for (int d = 0; d < 20; ++d)
    CHECK(model.theta.row(d).sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((model.phi.array() > 0.0).all());  // smoothing keeps strict positivity
  CHECK(model.tokens == corpus.vocab.tokens);
}

TEST_CASE("two clean topics are recovered") {
  auto corpus = from_token_ids(synthetic::two_topic_docs(60, 16, 21), 20);
  LdaConfig config;
  config.K = 2;
  config.alpha = 0.5;
  config.iterations = 150;
  config.seed = 9;
  TopicModel model = fit_lda(corpus.bows, corpus.vocab, config);
  // each topic's top-5 terms should come from one vocabulary half
  for (int k = 0; k < 2; ++k) {
    auto terms = top_terms(model, k, 5);
    REQUIRE(terms.size() == 5);
    std::set<bool> halves;
    for (const auto& [token, prob] : terms) {
      int id = corpus.vocab.lookup(token);
      halves.insert(id < 10);
      CHECK(prob > 0.0);
    }
    CHECK(halves.size() == 1);
  }
}

TEST_CASE("same seed gives the same model") {
  auto corpus = from_token_ids(synthetic::two_topic_docs(20, 10, 8), 20);
  LdaConfig config;
  config.K = 3;
  config.iterations = 40;
  config.seed = 123;
  TopicModel a = fit_lda(corpus.bows, corpus.vocab, config);
  TopicModel b = fit_lda(corpus.bows, corpus.vocab, config);
  CHECK((a.phi.array() == b.phi.array()).all());
  CHECK((a.theta.array() == b.theta.array()).all());
}

TEST_CASE("top_terms clamps n and breaks ties lexicographically") {
  TopicModel model;
  model.phi = Matrix(1, 3);
  model.phi << 0.4, 0.2, 0.4;
  model.theta = Matrix(1, 1);
  model.theta << 1.0;
  model.tokens = {"zeta", "mid", "alpha"};
  auto terms = top_terms(model, 0, 10);  // n larger than V
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].first == "alpha");  // 0.4 tie -> lexicographic
  CHECK(terms[1].first == "zeta");
  CHECK(terms[2].first == "mid");
  CHECK_THROWS_AS(top_terms(model, 1, 5), Error);
}

TEST_CASE("doc_topics returns the theta row and checks bounds") {
  auto corpus = from_token_ids({{0, 1}, {2, 2, 2}}, 3);
  LdaConfig config;
  config.K = 2;
  config.iterations = 10;
  TopicModel model = fit_lda(corpus.bows, corpus.vocab, config);
  Vector row = doc_topics(model, 1);
  CHECK(row.size() == 2);
  CHECK(row.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(doc_topics(model, 2), Error);
  CHECK_THROWS_AS(doc_topics(model, -1), Error);
}

TEST_CASE("extract_keywords ranks by tfidf weight with lexicographic ties") {
  std::vector<TokenizedDocument> docs = {{"d1", {"risk", "market", "risk"}},
                                         {"d2", {"risk", "loss"}},
                                         {"d3", {"risk", "market"}}};
  TfidfModel model = fit_idf(build_vocabulary(docs));
  // doc: risk x2 (idf<0), loss x1 (idf>0), market x1 (idf=0)
  auto ranked = extract_keywords({"risk", "risk", "loss", "market"}, model, 10);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].first == "loss");
  CHECK(ranked[0].second == doctest::Approx(0.405465).epsilon(1e-6));
  CHECK(ranked[1].first == "market");  // zero weight still listed
  CHECK(ranked[1].second == doctest::Approx(0.0));
  CHECK(ranked[2].first == "risk");
  CHECK(ranked[2].second == doctest::Approx(-0.575364).epsilon(1e-6));

  auto top1 = extract_keywords({"risk", "loss"}, model, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].first == "loss");

  CHECK(extract_keywords({"oov", "tokens"}, model, 3).empty());
}

TEST_CASE("topic_report prints one block per topic") {
  auto corpus = from_token_ids(synthetic::two_topic_docs(10, 8, 5), 20);
  LdaConfig config;
  config.K = 2;
  config.iterations = 15;
  TopicModel model = fit_lda(corpus.bows, corpus.vocab, config);
  std::string report = topic_report(model, 3);
  CHECK(report.find("topic 0") != std::string::npos);
  CHECK(report.find("topic 1") != std::string::npos);
  // per topic: header + 3 term lines + blank separator
  CHECK(std::count(report.begin(), report.end(), '\n') == 10);
  CHECK(report.find("\n\ntopic 1\n") != std::string::npos);
}
