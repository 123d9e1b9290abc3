#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "riskminer/corpus.hpp"
#include "riskminer/error.hpp"
#include "riskminer/eval.hpp"
#include "riskminer/features.hpp"
#include "riskminer/finance.hpp"
#include "riskminer/model_io.hpp"
#include "riskminer/preprocess.hpp"
#include "riskminer/report.hpp"
#include "riskminer/text_format.hpp"
#include "riskminer/topics.hpp"
#include "riskminer/version.hpp"
#include "riskminer/word2vec.hpp"

namespace fs = std::filesystem;
using namespace riskminer;

namespace {

// Shared --in/--out/--seed state plus provenance bookkeeping: every artifact
// starts with comment lines naming the tool version, schema, seed and a
// digest of each input read, so identical (inputs, seed) reruns are
// byte-identical.
struct Io {
  std::vector<std::string> inputs;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> digests;

  std::string read(const std::string& path) {
    std::string content = read_file(path);
    digests.emplace_back(path, to_hex(fnv1a64(content)));
    return content;
  }

  // For loaders that take a path: digest now, let the loader re-read.
  void digest_file(const std::string& path) { read(path); }

  const std::string& only_input(const char* what) const {
    if (inputs.size() != 1)
      fail(ErrorCode::InvalidConfig, std::string("expected exactly one --in (") + what + ")");
    return inputs[0];
  }

  std::string provenance() const {
    std::string out = "# riskminer " + std::string(kToolVersion) + " schema " +
                      std::to_string(kSchemaVersion) + "\n";
    out += "# seed " + std::to_string(seed) + "\n";
    for (const auto& [path, digest] : digests) out += "# input " + digest + " " + path + "\n";
    return out;
  }

  void write(const std::string& name, std::string_view content,
             const std::string& extra_comment = "") {
    fs::create_directories(out_dir);
    std::string full = provenance();
    if (!extra_comment.empty()) full += "# " + extra_comment + "\n";
    full += content;
    const std::string path = (fs::path(out_dir) / name).string();
    atomic_write_file(path, full);
    std::cout << "wrote " << path << "\n";
  }
};

void add_io(CLI::App* sub, Io& io, bool needs_out = true) {
  sub->add_option("--in", io.inputs, "input file(s)")->required();
  if (needs_out) sub->add_option("--out", io.out_dir, "output directory")->required();
  sub->add_option("--seed", io.seed, "rng seed (default 0)");
  sub->add_option("--config", io.config_path, "key=value defaults; explicit flags win");
}

// Config files hold key=value defaults for the active subcommand's long
// options (underscores may stand in for dashes). Each key the user did not
// already pass on the command line is appended as --key value, so explicit
// flags always win. Expanded before parsing because the parser only honors
// config options on the top-level command, not on subcommands.
std::vector<std::string> with_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> lines;
  try {
    lines = read_lines(path);
  } catch (const Error&) {
    fail(ErrorCode::InvalidConfig, "cannot read config file '" + path + "'");
  }
  for (const std::string& raw : lines) {
    std::string line{trim(raw)};
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(ErrorCode::InvalidConfig, "config line is not key=value: '" + line + "'");
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    bool given = false;
    for (const std::string& arg : args)
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    args.push_back(flag);
    if (value != "true") args.push_back(value);
  }
  return args;
}

std::vector<TokenizedDocument> to_tokenized(const std::vector<TokensRecord>& records) {
  std::vector<TokenizedDocument> docs;
  docs.reserve(records.size());
  for (const auto& record : records) docs.push_back({record.id, record.tokens});
  return docs;
}

std::vector<std::string> require_labels(const std::vector<TokensRecord>& records) {
  std::vector<std::string> labels;
  labels.reserve(records.size());
  for (const auto& record : records) {
    if (!record.label)
      fail(ErrorCode::MalformedRecord, "document '" + record.id + "' has no label");
    labels.push_back(*record.label);
  }
  return labels;
}

template <typename T>
std::vector<T> take(const std::vector<T>& values, const std::vector<int>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(values[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<int> iota_indices(std::size_t n) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

Matrix dense_rows(const std::vector<SparseVector>& rows, const std::vector<int>& idx,
                  int cols) {
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(idx.size()), cols);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (const auto& [col, value] : rows[static_cast<std::size_t>(idx[r])].entries)
      x(static_cast<Eigen::Index>(r), col) = value;
  return x;
}

// Hyperparameters across all model kinds; -1 / empty means the kind default.
struct Hyper {
  double alpha = 1.0;       // nb smoothing
  double lambda = 1e-3;     // svm regularization
  int epochs = -1;          // svm 50, recurrent 10, embeddings 5
  bool full_batch = false;  // svm
  double step = 0.0;        // svm full-batch
  int trees = 100;
  int depth = -1;
  int min_leaf = 1;
  int mtry = -1;
  int hidden = 32;
  int dim = 32;
  int t_max = 200;
  double lr = -1.0;  // recurrent 0.001
  std::string optimizer = "adam";
  double clip = 5.0;
  double l2 = 0.0;
};

void add_hyper(CLI::App* sub, Hyper& hyper) {
  sub->add_option("--alpha", hyper.alpha, "nb: Laplace smoothing");
  sub->add_option("--lambda", hyper.lambda, "svm: regularization strength");
  sub->add_option("--epochs", hyper.epochs, "training epochs (kind default if unset)");
  sub->add_flag("--full-batch", hyper.full_batch, "svm: full-batch subgradient descent");
  sub->add_option("--step", hyper.step, "svm: full-batch step size");
  sub->add_option("--trees", hyper.trees, "forest: number of trees");
  sub->add_option("--depth", hyper.depth, "forest: max depth (-1 = unlimited)");
  sub->add_option("--min-leaf", hyper.min_leaf, "forest: min samples per leaf");
  sub->add_option("--mtry", hyper.mtry, "forest: features per split (-1 = ceil sqrt F)");
  sub->add_option("--hidden", hyper.hidden, "rnn/lstm: hidden units");
  sub->add_option("--dim", hyper.dim, "rnn/lstm: embedding width");
  sub->add_option("--t-max", hyper.t_max, "rnn/lstm: truncation length");
  sub->add_option("--lr", hyper.lr, "rnn/lstm: learning rate");
  sub->add_option("--optimizer", hyper.optimizer, "rnn/lstm: sgd|adam|rmsprop")
      ->check(CLI::IsMember({"sgd", "adam", "rmsprop"}));
  sub->add_option("--clip", hyper.clip, "rnn/lstm: gradient norm clip");
  sub->add_option("--l2", hyper.l2, "rnn/lstm: weight penalty");
}

void apply_param(Hyper& hyper, const std::string& name, double value) {
  if (name == "alpha") hyper.alpha = value;
  else if (name == "lambda") hyper.lambda = value;
  else if (name == "epochs") hyper.epochs = static_cast<int>(value);
  else if (name == "step") hyper.step = value;
  else if (name == "trees") hyper.trees = static_cast<int>(value);
  else if (name == "depth") hyper.depth = static_cast<int>(value);
  else if (name == "min_leaf") hyper.min_leaf = static_cast<int>(value);
  else if (name == "mtry") hyper.mtry = static_cast<int>(value);
  else if (name == "hidden") hyper.hidden = static_cast<int>(value);
  else if (name == "dim") hyper.dim = static_cast<int>(value);
  else if (name == "t_max") hyper.t_max = static_cast<int>(value);
  else if (name == "lr") hyper.lr = value;
  else if (name == "clip") hyper.clip = value;
  else if (name == "l2") hyper.l2 = value;
  else fail(ErrorCode::InvalidConfig, "unknown search parameter '" + name + "'");
}

OptimizerKind parse_optimizer(const std::string& name) {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "rmsprop") return OptimizerKind::rmsprop;
  return OptimizerKind::adam;
}

// Everything a model kind may consume, rows aligned with the tokens file.
struct TrainData {
  std::vector<TokensRecord> records;
  std::vector<SparseVector> sparse;  // nb / svm / forest
  int n_features = 0;
  std::vector<std::vector<int>> sequences;  // rnn / lstm
  int vocab_size = 0;
  std::vector<std::string> labels;  // empty when unlabeled allowed
};

bool is_recurrent(const std::string& kind) { return kind == "rnn" || kind == "lstm"; }

TrainData load_train_data(Io& io, const std::string& kind, const std::string& features_path,
                          const std::string& tfidf_path, bool need_labels) {
  TrainData data;
  data.records = parse_tokens(io.read(io.only_input("tokens file")));
  if (need_labels) data.labels = require_labels(data.records);
  if (is_recurrent(kind)) {
    if (tfidf_path.empty())
      fail(ErrorCode::InvalidConfig, "--tfidf <vocabulary artifact> is required for " + kind);
    TfidfModel vocab_model = parse_tfidf(io.read(tfidf_path));
    data.vocab_size = vocab_model.vocab.size();
    data.sequences.reserve(data.records.size());
    for (const auto& record : data.records) {
      std::vector<int> seq;
      for (const auto& token : record.tokens) {
        int id = vocab_model.vocab.lookup(token);
        if (id >= 0) seq.push_back(id);
      }
      data.sequences.push_back(std::move(seq));
    }
  } else {
    if (features_path.empty())
      fail(ErrorCode::InvalidConfig, "--features <sparse matrix> is required for " + kind);
    auto [rows, cols] = parse_sparse_matrix(io.read(features_path));
    if (rows.size() != data.records.size())
      fail(ErrorCode::LengthMismatch,
           "features file has " + std::to_string(rows.size()) + " rows for " +
               std::to_string(data.records.size()) + " documents");
    data.sparse = std::move(rows);
    data.n_features = cols;
  }
  return data;
}

AnyModel train_any(const std::string& kind, const TrainData& data,
                   const std::vector<int>& idx, const Hyper& hyper, std::uint64_t seed) {
  std::vector<std::string> labels = take(data.labels, idx);
  if (kind == "nb") {
    return train_nb(take(data.sparse, idx), labels, data.n_features, hyper.alpha);
  }
  if (kind == "svm") {
    SvmConfig config;
    config.lambda = hyper.lambda;
    config.epochs = hyper.epochs < 0 ? 50 : hyper.epochs;
    config.seed = seed;
    config.full_batch = hyper.full_batch;
    config.step = hyper.step;
    return train_svm(dense_rows(data.sparse, idx, data.n_features), labels, config);
  }
  if (kind == "forest") {
    ForestConfig config;
    config.n_trees = hyper.trees;
    config.max_depth = hyper.depth;
    config.min_leaf = hyper.min_leaf;
    config.mtry = hyper.mtry;
    config.seed = seed;
    return train_forest(dense_rows(data.sparse, idx, data.n_features), labels, config);
  }
  RecurrentConfig config;
  config.kind = kind == "lstm" ? RecurrentKind::lstm : RecurrentKind::rnn;
  config.hidden = hyper.hidden;
  config.dim = hyper.dim;
  config.t_max = hyper.t_max;
  config.epochs = hyper.epochs < 0 ? 10 : hyper.epochs;
  config.optimizer.kind = parse_optimizer(hyper.optimizer);
  config.optimizer.lr = hyper.lr < 0 ? 0.001 : hyper.lr;
  config.clip_norm = hyper.clip;
  config.l2 = hyper.l2;
  config.seed = seed;
  return train_recurrent(take(data.sequences, idx), labels, data.vocab_size, config);
}

const std::vector<std::string>& model_labels(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> const std::vector<std::string>& { return m.labels; }, model);
}

std::pair<std::string, Vector> predict_any(const AnyModel& model, const TrainData& data,
                                           int i) {
  std::size_t row = static_cast<std::size_t>(i);
  if (const auto* nb = std::get_if<NBModel>(&model)) return predict_nb(*nb, data.sparse[row]);
  if (const auto* svm = std::get_if<LinearSvmModel>(&model))
    return predict_svm(*svm, data.sparse[row].to_dense(data.n_features));
  if (const auto* forest = std::get_if<ForestModel>(&model))
    return predict_forest(*forest, data.sparse[row].to_dense(data.n_features));
  return predict_recurrent(std::get<RecurrentModel>(model), data.sequences[row]);
}

// The kind a loaded model needs its inputs prepared for.
std::string data_kind(const AnyModel& model) {
  std::string kind = model_kind(model);
  return is_recurrent(kind) ? kind : "nb";  // any sparse-features kind works
}

double subset_accuracy(const AnyModel& model, const TrainData& data,
                       const std::vector<int>& idx) {
  if (idx.empty()) return 0.0;
  int hits = 0;
  for (int i : idx)
    if (predict_any(model, data, i).first == data.labels[static_cast<std::size_t>(i)]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(idx.size());
}

std::string losses_csv(const std::vector<double>& losses, const char* header) {
  std::string out = std::string(header) + "\n";
  for (std::size_t i = 0; i < losses.size(); ++i)
    out += std::to_string(i) + "," + format_double(losses[i]) + "\n";
  return out;
}

std::string predictions_csv(const AnyModel& model, const TrainData& data) {
  const std::vector<std::string>& labels = model_labels(model);
  std::string out = "id,predicted";
  for (const auto& label : labels) out += "," + csv_escape("score_" + label);
  out += "\n";
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    auto [pred, scores] = predict_any(model, data, static_cast<int>(i));
    out += csv_escape(data.records[i].id) + "," + csv_escape(pred);
    for (int c = 0; c < scores.size(); ++c) out += "," + format_double(scores[c]);
    out += "\n";
  }
  return out;
}

std::string format_param_map(const ParamMap& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += " ";
    out += name + "=" + format_double(value);
  }
  return out;
}

std::string search_report(const SearchResult& result) {
  std::string out;
  for (const auto& row : result.table) {
    out += "params " + format_param_map(row.params) + " mean " +
           format_double(row.mean_score) + " folds";
    for (double s : row.fold_scores) out += " " + format_double(s);
    out += "\n";
  }
  out += "best " + format_param_map(result.best) + "\n";
  return out;
}

// ---- subcommand bodies -----------------------------------------------------

void run_ingest(Io& io, const std::string& format_flag) {
  const std::string& path = io.only_input("corpus");
  io.digest_file(path);
  CorpusFormat format = CorpusFormat::jsonl;
  if (format_flag == "csv" || (format_flag.empty() && path.size() > 4 &&
                               path.substr(path.size() - 4) == ".csv"))
    format = CorpusFormat::csv;
  Corpus corpus = load_corpus(path, format);
  ValidationReport report = validate_corpus(corpus);
  io.write("corpus.jsonl", serialize_corpus(corpus));
  io.write("validation.txt", validation_text(report));
}

void run_preprocess(Io& io, const std::string& stopwords_path, bool no_stopwords,
                    bool no_stem, bool no_lowercase, bool keep_all_chars, bool keep_markup,
                    const std::string& lexicon_path) {
  Corpus corpus = load_corpus(io.only_input("corpus"), CorpusFormat::jsonl);
  io.digest_file(io.inputs[0]);
  PreprocessConfig config;
  config.lowercase = !no_lowercase;
  config.strip_markup = !keep_markup;
  config.stemming = !no_stem;
  if (keep_all_chars) config.keep_policy = CharPolicy::keep_all;
  if (no_stopwords) config.stopwords.clear();
  if (!stopwords_path.empty()) {
    io.digest_file(stopwords_path);
    config.stopwords = load_stopwords(stopwords_path);
  }
  if (!lexicon_path.empty()) {
    io.digest_file(lexicon_path);
    config.lexicon = load_lexicon(lexicon_path);
    config.segment_mode = SegmentMode::maximal_match;
  }
  std::vector<TokensRecord> records;
  records.reserve(corpus.docs.size());
  for (const auto& doc : corpus.docs) {
    TokenizedDocument tokenized = preprocess_pipeline(doc, config);
    records.push_back({tokenized.doc_id, doc.label, std::move(tokenized.tokens)});
  }
  io.write("tokens.jsonl", serialize_tokens(records));
}

void run_featurize(Io& io, const std::string& mode, int min_df, double max_df_ratio,
                   const std::string& tfidf_path, const std::string& embedding_path) {
  std::vector<TokensRecord> records = parse_tokens(io.read(io.only_input("tokens file")));
  std::vector<TokenizedDocument> docs = to_tokenized(records);
  TfidfModel model;
  if (tfidf_path.empty()) {
    Vocabulary vocab = build_vocabulary(docs, min_df, max_df_ratio);
    model = fit_idf(vocab);
  } else {
    model = parse_tfidf(io.read(tfidf_path));
  }
  std::vector<SparseVector> rows;
  rows.reserve(records.size());
  int cols = model.vocab.size();
  if (embedding_path.empty()) {
    for (const auto& record : records)
      rows.push_back(mode == "bow" ? bow(record.tokens, model.vocab)
                                   : tfidf(record.tokens, model));
  } else {
    if (mode != "tfidf")
      fail(ErrorCode::InvalidConfig, "--embedding fuses with tfidf features only");
    EmbeddingModel embedding = parse_embedding(io.read(embedding_path));
    cols += embedding.dim;
    for (const auto& record : records) {
      Vector fused = fuse_features(tfidf(record.tokens, model), model.vocab.size(),
                                   doc_embedding(record.tokens, embedding));
      SparseVector sparse;
      for (int c = 0; c < fused.size(); ++c)
        if (fused[c] != 0.0) sparse.entries.emplace_back(c, fused[c]);
      rows.push_back(std::move(sparse));
    }
  }
  if (tfidf_path.empty()) io.write("tfidf.txt", serialize_tfidf(model));
  io.write("features.txt", serialize_sparse_matrix(rows, cols), "mode " + mode);
}

void run_embed(Io& io, const std::string& mode, int dim, int window, int negatives,
               int epochs, double lr) {
  std::vector<TokensRecord> records = parse_tokens(io.read(io.only_input("tokens file")));
  Word2VecConfig config;
  config.mode = mode == "cbow" ? W2vMode::cbow : W2vMode::skipgram;
  config.dim = dim;
  config.window = window;
  config.negatives = negatives;
  config.epochs = epochs;
  config.initial_lr = lr;
  config.seed = io.seed;
  EmbeddingModel model = train_word2vec(to_tokenized(records), config);
  io.write("embedding.txt", serialize_embedding(model), "mode " + mode);
  io.write("losses.csv", losses_csv(model.epoch_losses, "epoch,loss"));
}

void run_topics(Io& io, int k, double alpha, double beta, int iters, int min_df, int top) {
  std::vector<TokensRecord> records = parse_tokens(io.read(io.only_input("tokens file")));
  std::vector<TokenizedDocument> docs = to_tokenized(records);
  Vocabulary vocab = build_vocabulary(docs, min_df, 1.0);
  std::vector<SparseVector> bows;
  bows.reserve(records.size());
  for (const auto& record : records) bows.push_back(bow(record.tokens, vocab));
  LdaConfig config;
  config.K = k;
  config.alpha = alpha;
  config.beta = beta;
  config.iterations = iters;
  config.seed = io.seed;
  TopicModel model = fit_lda(bows, vocab, config);
  io.write("topics.txt", serialize_topics(model));
  io.write("topic_report.txt", topic_report(model, top));
  std::string csv = "id";
  for (int t = 0; t < k; ++t) csv += ",topic_" + std::to_string(t);
  csv += "\n";
  for (std::size_t d = 0; d < records.size(); ++d) {
    csv += csv_escape(records[d].id);
    Vector theta = doc_topics(model, static_cast<int>(d));
    for (int t = 0; t < theta.size(); ++t) csv += "," + format_double(theta[t]);
    csv += "\n";
  }
  io.write("doc_topics.csv", csv);
}

void run_keywords(Io& io, int top, int min_df) {
  std::vector<TokensRecord> records = parse_tokens(io.read(io.only_input("tokens file")));
  std::vector<TokenizedDocument> docs = to_tokenized(records);
  TfidfModel model = fit_idf(build_vocabulary(docs, min_df, 1.0));
  std::string csv = "id,rank,token,weight\n";
  for (const auto& record : records) {
    auto ranked = extract_keywords(record.tokens, model, top);
    for (std::size_t r = 0; r < ranked.size(); ++r)
      csv += csv_escape(record.id) + "," + std::to_string(r + 1) + "," +
             csv_escape(ranked[r].first) + "," + format_double(ranked[r].second) + "\n";
  }
  io.write("keywords.csv", csv);
}

void run_train(Io& io, const std::string& kind, const std::string& features_path,
               const std::string& tfidf_path, const Hyper& hyper) {
  TrainData data = load_train_data(io, kind, features_path, tfidf_path, true);
  AnyModel model =
      train_any(kind, data, iota_indices(data.records.size()), hyper, io.seed);
  io.write("model.txt", serialize_model(model));
  if (const auto* svm = std::get_if<LinearSvmModel>(&model);
      svm && !svm->objective_history.empty())
    io.write("objective.csv", losses_csv(svm->objective_history, "epoch,objective"));
  if (const auto* recurrent = std::get_if<RecurrentModel>(&model))
    io.write("losses.csv", losses_csv(recurrent->epoch_losses, "epoch,loss"));
}

void run_predict(Io& io, const std::string& model_path, const std::string& features_path,
                 const std::string& tfidf_path) {
  AnyModel model = parse_model(io.read(model_path));
  TrainData data = load_train_data(io, data_kind(model), features_path, tfidf_path, false);
  io.write("predictions.csv", predictions_csv(model, data), "model " + model_kind(model));
}

void run_evaluate(Io& io, const std::string& model_path, const std::string& features_path,
                  const std::string& tfidf_path) {
  AnyModel model = parse_model(io.read(model_path));
  TrainData data = load_train_data(io, data_kind(model), features_path, tfidf_path, true);
  const std::vector<std::string>& labels = model_labels(model);
  int n = static_cast<int>(data.records.size());
  std::vector<std::string> predicted;
  Matrix scores(n, static_cast<Eigen::Index>(labels.size()));
  for (int i = 0; i < n; ++i) {
    auto [pred, row_scores] = predict_any(model, data, i);
    predicted.push_back(pred);
    scores.row(i) = row_scores.transpose();
  }
  ConfusionMatrix matrix = confusion(data.labels, predicted, labels);
  MetricsReport report = metrics(matrix);
  io.write("metrics.txt", metrics_table(report) + "\n" + confusion_table(matrix),
           "model " + model_kind(model));
  io.write("metrics.kv",
           "model " + model_kind(model) + "\nn " + std::to_string(n) + "\n" +
               metrics_keyvalues(report));
  std::string roc_out = "label,fpr,tpr\n";
  for (const auto& [label, curve] : roc_ovr(data.labels, scores, labels)) {
    roc_out += "# auc " + csv_escape(label) + " " + format_double(curve.auc) + "\n";
    for (const auto& [fpr, tpr] : curve.points)
      roc_out += csv_escape(label) + "," + format_double(fpr) + "," + format_double(tpr) + "\n";
  }
  io.write("roc.csv", roc_out);
  io.write("predictions.csv", predictions_csv(model, data), "model " + model_kind(model));
}

void run_cv(Io& io, const std::string& kind, const std::string& features_path,
            const std::string& tfidf_path, const Hyper& hyper, int k) {
  TrainData data = load_train_data(io, kind, features_path, tfidf_path, true);
  auto folds = kfold(static_cast<int>(data.records.size()), k, io.seed);
  std::vector<int> all = iota_indices(data.records.size());
  std::string text;
  std::string kv = "model " + kind + "\nk " + std::to_string(k) + "\n";
  double mean = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<bool> held(data.records.size(), false);
    for (int i : folds[f]) held[static_cast<std::size_t>(i)] = true;
    std::vector<int> train_idx;
    for (int i : all)
      if (!held[static_cast<std::size_t>(i)]) train_idx.push_back(i);
    AnyModel model = train_any(kind, data, train_idx, hyper, io.seed);
    double acc = subset_accuracy(model, data, folds[f]);
    mean += acc;
    text += "fold " + std::to_string(f) + " accuracy " + format_double(acc) + "\n";
    kv += "fold_" + std::to_string(f) + " " + format_double(acc) + "\n";
  }
  mean /= static_cast<double>(folds.size());
  text += "mean accuracy " + format_double(mean) + "\n";
  kv += "mean_accuracy " + format_double(mean) + "\n";
  io.write("cv.txt", text, "model " + kind);
  io.write("cv.kv", kv);
}

void run_search(Io& io, const std::string& kind, const std::string& features_path,
                const std::string& tfidf_path, const Hyper& hyper, int k,
                const std::vector<std::string>& grid_params,
                const std::vector<std::string>& ranges, int draws) {
  if (grid_params.empty() == ranges.empty())
    fail(ErrorCode::InvalidConfig, "give either --param (grid) or --range (random)");
  TrainData data = load_train_data(io, kind, features_path, tfidf_path, true);
  FoldScorer scorer = [&](const ParamMap& params, const std::vector<int>& train_idx,
                          const std::vector<int>& val_idx) {
    Hyper h = hyper;
    for (const auto& [name, value] : params) apply_param(h, name, value);
    AnyModel model = train_any(kind, data, train_idx, h, io.seed);
    return subset_accuracy(model, data, val_idx);
  };
  KfoldSpec folds{static_cast<int>(data.records.size()), k, io.seed};
  SearchResult result;
  if (!grid_params.empty()) {
    std::vector<std::pair<std::string, std::vector<double>>> space;
    for (const auto& spec : grid_params) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(ErrorCode::InvalidConfig, "--param wants name=v1,v2,... got '" + spec + "'");
      const std::string list = spec.substr(eq + 1);
      std::vector<double> values;
      for (auto part : split_char(list, ','))
        values.push_back(parse_double(trim(part)));
      space.emplace_back(spec.substr(0, eq), std::move(values));
    }
    result = grid_search(space, scorer, folds);
  } else {
    std::vector<ParamRange> space;
    for (const auto& spec : ranges) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(ErrorCode::InvalidConfig, "--range wants name=lo:hi[:int] got '" + spec + "'");
      const std::string list = spec.substr(eq + 1);
      auto parts = split_char(list, ':');
      if (parts.size() != 2 && parts.size() != 3)
        fail(ErrorCode::InvalidConfig, "--range wants name=lo:hi[:int] got '" + spec + "'");
      ParamRange range;
      range.name = spec.substr(0, eq);
      range.lo = parse_double(trim(parts[0]));
      range.hi = parse_double(trim(parts[1]));
      range.integer = parts.size() == 3 && trim(parts[2]) == "int";
      space.push_back(std::move(range));
    }
    result = random_search(space, draws, io.seed, scorer, folds);
  }
  io.write("search.txt", search_report(result), "model " + kind);
  std::string kv = "model " + kind + "\n";
  for (const auto& [name, value] : result.best)
    kv += "param " + name + " " + format_double(value) + "\n";
  for (const auto& row : result.table) {
    if (row.params == result.best) {
      kv += "mean_score " + format_double(row.mean_score) + "\n";
      break;
    }
  }
  io.write("best.kv", kv);
}

void run_finance(Io& io, const std::string& previous_path, double liquidity_floor,
                 double debt_ceiling, double max_debt_ratio) {
  const std::string& path = io.only_input("financial records CSV");
  io.digest_file(path);
  std::vector<FinancialRecord> current = load_financial_records(path, max_debt_ratio);
  ScreenConfig config{liquidity_floor, debt_ceiling};
  std::vector<RatioReport> ratios = screen(current, config);
  io.write("screen.txt", screen_table(ratios));
  io.write("screen.csv", screen_csv(ratios));
  std::vector<TrendReport> trends;
  if (!previous_path.empty()) {
    io.digest_file(previous_path);
    std::vector<FinancialRecord> previous =
        load_financial_records(previous_path, max_debt_ratio);
    trends = trend_report(match_periods(previous, current));
    io.write("trend.txt", trend_table(trends));
    io.write("trend.csv", trend_csv(trends));
  }
  std::vector<CompanyAnalysis> combined = combine_analysis(ratios, trends);
  io.write("analysis.txt", analysis_table(combined));
  io.write("analysis.csv", analysis_csv(combined));
}

void run_report(Io& io, const std::vector<std::string>& names, const std::string& dataset,
                const std::string& split_desc) {
  if (io.inputs.empty()) fail(ErrorCode::InvalidConfig, "need at least one --in metrics.kv");
  std::vector<std::pair<std::string, MetricsReport>> rows;
  for (std::size_t i = 0; i < io.inputs.size(); ++i) {
    std::string content = io.read(io.inputs[i]);
    MetricsReport report;
    std::string name = fs::path(io.inputs[i]).stem().string();
    std::size_t start = 0;
    while (start <= content.size()) {
      std::size_t end = content.find('\n', start);
      if (end == std::string::npos) end = content.size();
      std::string_view line = trim(std::string_view(content).substr(start, end - start));
      start = end + 1;
      if (line.empty() || line[0] == '#') continue;
      auto fields = split_whitespace(line);
      if (fields.size() < 2) continue;
      if (fields[0] == "model") name = std::string(fields[1]);
      else if (fields[0] == "accuracy") report.accuracy = parse_double(fields[1]);
      else if (fields[0] == "macro_precision") report.macro_precision = parse_double(fields[1]);
      else if (fields[0] == "macro_recall") report.macro_recall = parse_double(fields[1]);
      else if (fields[0] == "macro_f1") report.macro_f1 = parse_double(fields[1]);
    }
    if (i < names.size()) name = names[i];
    rows.emplace_back(name, report);
  }
  TableProvenance provenance{dataset, split_desc, io.seed};
  io.write("table3.txt", report_table3(rows, provenance));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"financial-text risk detection toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Io io;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "load, validate and normalize a corpus");
  std::string ingest_format;
  add_io(ingest, io);
  ingest->add_option("--format", ingest_format, "jsonl|csv (default: by extension)")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  ingest->callback([&] { run_ingest(io, ingest_format); });

  // preprocess
  auto* preprocess = app.add_subcommand("preprocess", "segment, clean, stem");
  std::string stopwords_path, lexicon_path;
  bool no_stopwords = false, no_stem = false, no_lowercase = false;
  bool keep_all_chars = false, keep_markup = false;
  add_io(preprocess, io);
  preprocess->add_option("--stopwords", stopwords_path, "stopword list file");
  preprocess->add_flag("--no-stopwords", no_stopwords, "keep stopwords");
  preprocess->add_flag("--no-stem", no_stem, "skip stemming");
  preprocess->add_flag("--no-lowercase", no_lowercase, "keep case");
  preprocess->add_flag("--keep-all-chars", keep_all_chars, "keep punctuation tokens");
  preprocess->add_flag("--keep-markup", keep_markup, "keep <...> spans");
  preprocess->add_option("--lexicon", lexicon_path, "dictionary for maximal-match segmentation");
  preprocess->callback([&] {
    run_preprocess(io, stopwords_path, no_stopwords, no_stem, no_lowercase, keep_all_chars,
                   keep_markup, lexicon_path);
  });

  // featurize
  auto* featurize = app.add_subcommand("featurize", "bag-of-words / tf-idf matrices");
  std::string feat_mode = "tfidf", feat_tfidf, feat_embedding;
  int min_df = 1;
  double max_df_ratio = 1.0;
  add_io(featurize, io);
  featurize->add_option("--mode", feat_mode, "bow|tfidf")
      ->check(CLI::IsMember({"bow", "tfidf"}));
  featurize->add_option("--min-df", min_df, "drop tokens in fewer docs");
  featurize->add_option("--max-df-ratio", max_df_ratio, "drop tokens above this doc share");
  featurize->add_option("--tfidf", feat_tfidf, "reuse a fitted tfidf artifact");
  featurize->add_option("--embedding", feat_embedding, "fuse tfidf with doc embeddings");
  featurize->callback(
      [&] { run_featurize(io, feat_mode, min_df, max_df_ratio, feat_tfidf, feat_embedding); });

  // embed
  auto* embed = app.add_subcommand("embed", "train word embeddings");
  std::string embed_mode = "skipgram";
  int dim = 50, window = 5, negatives = 5, embed_epochs = 5;
  double embed_lr = 0.025;
  add_io(embed, io);
  embed->add_option("--mode", embed_mode, "skipgram|cbow")
      ->check(CLI::IsMember({"skipgram", "cbow"}));
  embed->add_option("--dim", dim, "vector width");
  embed->add_option("--window", window, "context window");
  embed->add_option("--negatives", negatives, "negative samples per pair");
  embed->add_option("--epochs", embed_epochs, "passes over the corpus");
  embed->add_option("--lr", embed_lr, "initial learning rate");
  embed->callback(
      [&] { run_embed(io, embed_mode, dim, window, negatives, embed_epochs, embed_lr); });

  // topics
  auto* topics = app.add_subcommand("topics", "LDA risk themes");
  int n_topics = 10, iters = 200, topics_min_df = 1, top_terms_n = 10;
  double alpha = 0.0, beta = 0.01;
  add_io(topics, io);
  topics->add_option("--topics", n_topics, "number of topics");
  topics->add_option("--alpha", alpha, "doc-topic prior (0 = 50/K)");
  topics->add_option("--beta", beta, "topic-word prior");
  topics->add_option("--iters", iters, "Gibbs sweeps");
  topics->add_option("--min-df", topics_min_df, "vocabulary floor");
  topics->add_option("--top", top_terms_n, "terms per topic in the report");
  topics->callback(
      [&] { run_topics(io, n_topics, alpha, beta, iters, topics_min_df, top_terms_n); });

  // keywords
  auto* keywords = app.add_subcommand("keywords", "tf-idf keyword extraction");
  int kw_top = 10, kw_min_df = 1;
  add_io(keywords, io);
  keywords->add_option("--top", kw_top, "keywords per document");
  keywords->add_option("--min-df", kw_min_df, "vocabulary floor");
  keywords->callback([&] { run_keywords(io, kw_top, kw_min_df); });

  // train
  auto* train = app.add_subcommand("train", "fit a classifier");
  std::string train_kind, train_features, train_tfidf;
  Hyper hyper;
  add_io(train, io);
  train->add_option("--model", train_kind, "nb|svm|forest|rnn|lstm")
      ->required()
      ->check(CLI::IsMember({"nb", "svm", "forest", "rnn", "lstm"}));
  train->add_option("--features", train_features, "sparse feature matrix (nb/svm/forest)");
  train->add_option("--tfidf", train_tfidf, "vocabulary artifact (rnn/lstm)");
  add_hyper(train, hyper);
  train->callback([&] { run_train(io, train_kind, train_features, train_tfidf, hyper); });

  // predict
  auto* predict = app.add_subcommand("predict", "label new documents");
  std::string predict_model, predict_features, predict_tfidf;
  add_io(predict, io);
  predict->add_option("--model-file", predict_model, "trained model artifact")->required();
  predict->add_option("--features", predict_features, "sparse feature matrix (nb/svm/forest)");
  predict->add_option("--tfidf", predict_tfidf, "vocabulary artifact (rnn/lstm)");
  predict->callback([&] { run_predict(io, predict_model, predict_features, predict_tfidf); });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "metrics on labeled data");
  std::string eval_model, eval_features, eval_tfidf;
  add_io(evaluate, io);
  evaluate->add_option("--model-file", eval_model, "trained model artifact")->required();
  evaluate->add_option("--features", eval_features, "sparse feature matrix (nb/svm/forest)");
  evaluate->add_option("--tfidf", eval_tfidf, "vocabulary artifact (rnn/lstm)");
  evaluate->callback([&] { run_evaluate(io, eval_model, eval_features, eval_tfidf); });

  // cv
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation");
  std::string cv_kind, cv_features, cv_tfidf;
  Hyper cv_hyper;
  int cv_k = 5;
  add_io(cv, io);
  cv->add_option("--model", cv_kind, "nb|svm|forest|rnn|lstm")
      ->required()
      ->check(CLI::IsMember({"nb", "svm", "forest", "rnn", "lstm"}));
  cv->add_option("--features", cv_features, "sparse feature matrix (nb/svm/forest)");
  cv->add_option("--tfidf", cv_tfidf, "vocabulary artifact (rnn/lstm)");
  cv->add_option("--k", cv_k, "folds");
  add_hyper(cv, cv_hyper);
  cv->callback([&] { run_cv(io, cv_kind, cv_features, cv_tfidf, cv_hyper, cv_k); });

  // search
  auto* search = app.add_subcommand("search", "grid / random hyperparameter search");
  std::string search_kind, search_features, search_tfidf;
  Hyper search_hyper;
  int search_k = 3, draws = 10;
  std::vector<std::string> grid_params, ranges;
  add_io(search, io);
  search->add_option("--model", search_kind, "nb|svm|forest|rnn|lstm")
      ->required()
      ->check(CLI::IsMember({"nb", "svm", "forest", "rnn", "lstm"}));
  search->add_option("--features", search_features, "sparse feature matrix (nb/svm/forest)");
  search->add_option("--tfidf", search_tfidf, "vocabulary artifact (rnn/lstm)");
  search->add_option("--k", search_k, "folds per configuration");
  search->add_option("--param", grid_params, "grid axis, name=v1,v2,... (repeatable)");
  search->add_option("--range", ranges, "random axis, name=lo:hi[:int] (repeatable)");
  search->add_option("--draws", draws, "random search draws");
  add_hyper(search, search_hyper);
  search->callback([&] {
    run_search(io, search_kind, search_features, search_tfidf, search_hyper, search_k,
               grid_params, ranges, draws);
  });

  // finance
  auto* finance = app.add_subcommand("finance", "ratio screening and trends");
  std::string previous_path;
  double liquidity_floor = 1.5, debt_ceiling = 0.7, max_debt_ratio = 1.5;
  add_io(finance, io);
  finance->add_option("--previous", previous_path, "previous-period records CSV");
  finance->add_option("--liquidity-floor", liquidity_floor, "flag liquidity_ratio <= floor");
  finance->add_option("--debt-ceiling", debt_ceiling, "flag debt_ratio >= ceiling");
  finance->add_option("--max-debt-ratio", max_debt_ratio, "ingestion validity bound");
  finance->callback(
      [&] { run_finance(io, previous_path, liquidity_floor, debt_ceiling, max_debt_ratio); });

  // report
  auto* report = app.add_subcommand("report", "combine evaluations into one table");
  std::vector<std::string> report_names;
  std::string dataset = "-", split_desc = "-";
  add_io(report, io);
  report->add_option("--name", report_names, "row names (default: from each metrics.kv)");
  report->add_option("--dataset", dataset, "dataset description for the footer");
  report->add_option("--split", split_desc, "split description for the footer");
  report->callback([&] { run_report(io, report_names, dataset, split_desc); });

  try {
    std::vector<std::string> args = with_config_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const Error& e) {
    std::cerr << "riskminer: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidConfig ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "riskminer: internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
