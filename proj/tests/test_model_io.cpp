#include <doctest.h>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/model_io.hpp"
#include "riskminer/rng.hpp"
#include "support/synthetic.hpp"

using namespace riskminer;

namespace {

std::vector<TokenizedDocument> toy_docs() {
  return {{"d1", {"risk", "market", "risk"}},
          {"d2", {"risk", "loss"}},
          {"d3", {"risk", "market"}}};
}

// stable round trip: serialize -> parse -> serialize must be byte-identical
template <typename T, typename Ser, typename Par>
void check_stable(const T& value, Ser serialize, Par parse) {
  std::string once = serialize(value);
  T parsed = parse(once);
  CHECK(serialize(parsed) == once);
}

}  // namespace

TEST_CASE("tokens jsonl round-trips ids, labels, and order") {
  std::vector<TokensRecord> records = {
      {"a", std::string("Market Risk"), {"rise", "market"}},
      {"b", std::nullopt, {"calm"}},
      {"c", std::string("with \"quotes\""), {}}};
  std::string text = "# generated\n" + serialize_tokens(records);
  auto parsed = parse_tokens(text);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0].id == "a");
  CHECK(parsed[0].label.value() == "Market Risk");
  CHECK(parsed[0].tokens == std::vector<std::string>{"rise", "market"});
  CHECK(!parsed[1].label.has_value());
  CHECK(parsed[2].label.value() == "with \"quotes\"");
  CHECK(serialize_tokens(parsed) == serialize_tokens(records));

  CHECK_THROWS_AS(parse_tokens("{\"tokens\":[]}"), Error);        // missing id
  CHECK_THROWS_AS(parse_tokens("{\"id\":\"x\"}"), Error);         // missing tokens
  CHECK_THROWS_AS(parse_tokens("{\"id\":1,\"tokens\":[]}"), Error);
  CHECK_THROWS_AS(parse_tokens("not json"), Error);
  try {
    parse_tokens("{\"id\":\"ok\",\"tokens\":[]}\nbroken");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("sparse matrices enforce order and drop explicit zeros") {
  std::vector<SparseVector> rows(3);
  rows[0].entries = {{0, 1.5}, {4, -2.0}};
  rows[2].entries = {{2, 0.25}};
  std::string text = serialize_sparse_matrix(rows, 5);
  auto [parsed, cols] = parse_sparse_matrix(text);
  CHECK(cols == 5);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0].entries == rows[0].entries);
  CHECK(parsed[1].entries.empty());
  CHECK(parsed[2].entries == rows[2].entries);
  CHECK(serialize_sparse_matrix(parsed, cols) == text);

  // comments and blank lines are tolerated
  auto [again, cols2] = parse_sparse_matrix("# hi\n\n" + text);
  CHECK(cols2 == 5);
  CHECK(again[0].entries == rows[0].entries);

  std::string header = "riskminer-features 1 2 3\n";
  auto [zero_dropped, c3] = parse_sparse_matrix(header + "0 1 0\n1 2 4\n");
  CHECK(zero_dropped[0].entries.empty());  // explicit zero vanishes
  CHECK(zero_dropped[1].entries.size() == 1);

  CHECK_THROWS_AS(parse_sparse_matrix(header + "0 3 1\n"), Error);   // col OOB
  CHECK_THROWS_AS(parse_sparse_matrix(header + "2 0 1\n"), Error);   // row OOB
  CHECK_THROWS_AS(parse_sparse_matrix(header + "0 2 1\n0 1 1\n"), Error);  // order
  CHECK_THROWS_AS(parse_sparse_matrix(header + "0 1 1\n0 1 2\n"), Error);  // dup
  CHECK_THROWS_AS(parse_sparse_matrix("riskminer-features 9 2 3\n"), Error);
}

TEST_CASE("tfidf model serialization is stable") {
  TfidfModel model = fit_idf(build_vocabulary(toy_docs()));
  check_stable(model, serialize_tfidf, [](const std::string& s) { return parse_tfidf(s); });
  TfidfModel parsed = parse_tfidf(serialize_tfidf(model));
  CHECK(parsed.vocab.tokens == model.vocab.tokens);
  CHECK(parsed.vocab.df == model.vocab.df);
  CHECK(parsed.vocab.n_docs == 3);
  CHECK(parsed.vocab.lookup("risk") == model.vocab.lookup("risk"));
  CHECK((parsed.idf.array() == model.idf.array()).all());  // bitwise

  std::string text = serialize_tfidf(model);
  text.replace(text.find(" 1 "), 3, " 2 ");  // bump schema version
  try {
    parse_tfidf(text);
    FAIL("schema mismatch expected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaMismatch);
  }

  CHECK_THROWS_AS(parse_tfidf("riskminer-embedding 1 2 2\n"), Error);  // wrong kind
  std::string truncated = serialize_tfidf(model);
  truncated.resize(truncated.size() / 2);
  CHECK_THROWS_AS(parse_tfidf(truncated), Error);
}

TEST_CASE("embedding serialization keeps input vectors bit-exact") {
  Word2VecConfig config;
  config.dim = 8;
  config.window = 2;
  config.epochs = 2;
  config.seed = 3;
  EmbeddingModel model = train_word2vec(synthetic::planted_pair_docs(20, 30, 10, 1), config);
  std::string text = serialize_embedding(model);
  EmbeddingModel parsed = parse_embedding(text);
  CHECK(parsed.dim == 8);
  CHECK(parsed.vocab.tokens == model.vocab.tokens);
  CHECK((parsed.input_vectors.array() == model.input_vectors.array()).all());
  CHECK(serialize_embedding(parsed) == text);
  // training-only state is not persisted
  CHECK(parsed.output_vectors.size() == 0);
  CHECK(parsed.epoch_losses.empty());
}

TEST_CASE("topic model serialization is stable") {
  auto docs = toy_docs();
  Vocabulary vocab = build_vocabulary(docs);
  std::vector<SparseVector> bows;
  for (const auto& d : docs) bows.push_back(bow(d.tokens, vocab));
  LdaConfig config;
  config.K = 2;
  config.iterations = 20;
  config.seed = 11;
  TopicModel model = fit_lda(bows, vocab, config);
  std::string text = serialize_topics(model);
  TopicModel parsed = parse_topics(text);
  CHECK(parsed.tokens == model.tokens);
  CHECK((parsed.phi.array() == model.phi.array()).all());
  CHECK((parsed.theta.array() == model.theta.array()).all());
  CHECK(parsed.config.K == 2);
  CHECK(parsed.config.seed == 11);
  CHECK(serialize_topics(parsed) == text);
}

TEST_CASE("every classifier kind round-trips through serialize_model") {
  auto data = synthetic::threshold_rule(60, 5);
  std::vector<SparseVector> bows(60);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 4; ++j)
      if (data.x(i, j) != 0.0) bows[static_cast<std::size_t>(i)].entries.push_back({j, data.x(i, j)});

  AnyModel nb = train_nb(bows, data.labels, 4, 1.0);
  CHECK(model_kind(nb) == "nb");

  SvmConfig svm_config;
  svm_config.epochs = 5;
  AnyModel svm = train_svm(data.x, data.labels, svm_config);
  CHECK(model_kind(svm) == "svm");

  ForestConfig forest_config;
  forest_config.n_trees = 5;
  AnyModel forest = train_forest(data.x, data.labels, forest_config);
  CHECK(model_kind(forest) == "forest");

  auto task = synthetic::first_token_task(30, 5, 6, 3);
  RecurrentConfig rc;
  rc.kind = RecurrentKind::rnn;
  rc.hidden = 4;
  rc.dim = 4;
  rc.epochs = 2;
  AnyModel rnn = train_recurrent(task.sequences, task.labels, task.vocab_size, rc);
  CHECK(model_kind(rnn) == "rnn");
  rc.kind = RecurrentKind::lstm;
  AnyModel lstm = train_recurrent(task.sequences, task.labels, task.vocab_size, rc);
  CHECK(model_kind(lstm) == "lstm");

  for (const AnyModel* model : {&nb, &svm, &forest, &rnn, &lstm}) {
    std::string text = serialize_model(*model);
    AnyModel parsed = parse_model(text);
    CHECK(model_kind(parsed) == model_kind(*model));
    CHECK(serialize_model(parsed) == text);
    // '#' comments anywhere are ignored
    AnyModel with_comments = parse_model("# provenance\n" + text);
    CHECK(serialize_model(with_comments) == text);
  }

  // predictions survive the round trip bit-for-bit
  AnyModel forest_again = parse_model(serialize_model(forest));
  const auto& fm = std::get<ForestModel>(forest);
  const auto& fm2 = std::get<ForestModel>(forest_again);
  for (int i = 0; i < 10; ++i) {
    auto [l1, v1] = predict_forest(fm, data.x.row(i));
    auto [l2, v2] = predict_forest(fm2, data.x.row(i));
    CHECK(l1 == l2);
    CHECK((v1.array() == v2.array()).all());
  }
}

TEST_CASE("labels with spaces and percent signs survive") {
  std::vector<SparseVector> bows = {{{{0, 1.0}}}, {{{1, 2.0}}}};
  AnyModel nb = train_nb(bows, {"Market Risk", "100% Loss"}, 2, 1.0);
  AnyModel parsed = parse_model(serialize_model(nb));
  CHECK(std::get<NBModel>(parsed).labels ==
        std::vector<std::string>{"100% Loss", "Market Risk"});
}

TEST_CASE("model parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_model(""), Error);
  CHECK_THROWS_AS(parse_model("riskminer-zebra 1 1 1 1 1\n"), Error);
  CHECK_THROWS_AS(parse_model("nonsense\n"), Error);

  std::vector<SparseVector> bows = {{{{0, 1.0}}}, {{{1, 2.0}}}};
  std::string text = serialize_model(AnyModel{train_nb(bows, {"a", "b"}, 2, 1.0)});
  std::string truncated = text.substr(0, text.rfind("class"));  // drop last row
  CHECK_THROWS_AS(parse_model(truncated), Error);
}

TEST_CASE("save_text writes what load_text reads back") {
  auto dir = std::filesystem::temp_directory_path() / "riskminer_io_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "artifact.txt").string();
  save_text(path, "payload\n");
  CHECK(load_text(path) == "payload\n");
  CHECK_THROWS_AS(load_text((dir / "missing.txt").string()), Error);
  std::filesystem::remove_all(dir);
}
