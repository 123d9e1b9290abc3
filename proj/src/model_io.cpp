#include "riskminer/model_io.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"
#include "riskminer/version.hpp"

namespace riskminer {

namespace {

// Labels are opaque strings and may contain spaces; they are percent-encoded
// inside whitespace-separated artifact lines. Pipeline tokens are always
// whitespace-free, so they are stored raw.

// Walks the non-comment, non-blank lines of an artifact.
class LineParser {
 public:
  explicit LineParser(std::string_view content) {
    std::size_t start = 0;
    while (start <= content.size()) {
      std::size_t end = content.find('\n', start);
      if (end == std::string_view::npos) end = content.size();
      std::string_view line = trim(content.substr(start, end - start));
      if (!line.empty() && line[0] != '#') lines_.push_back(line);
      start = end + 1;
    }
  }

  bool done() const { return pos_ >= lines_.size(); }

  std::string_view next() {
    if (done()) fail(ErrorCode::MalformedRecord, "unexpected end of artifact");
    return lines_[pos_++];
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

// Parses and checks the header line "riskminer-<kind> <schema> <dims...>",
// returning the dimension fields.
std::vector<std::string_view> parse_header(LineParser& parser, std::string_view kind,
                                           std::size_t n_dims) {
  std::vector<std::string_view> fields = split_whitespace(parser.next());
  std::string magic = "riskminer-" + std::string(kind);
  if (fields.empty() || fields[0] != magic)
    fail(ErrorCode::MalformedRecord, "expected '" + magic + "' artifact");
  if (fields.size() < 2 || parse_int(fields[1]) != kSchemaVersion)
    fail(ErrorCode::SchemaMismatch,
         "artifact schema is not " + std::to_string(kSchemaVersion));
  if (fields.size() != n_dims + 2)
    fail(ErrorCode::MalformedRecord, "bad '" + magic + "' header");
  return std::vector<std::string_view>(fields.begin() + 2, fields.end());
}

std::string header_line(std::string_view kind, const std::vector<std::string>& dims) {
  std::string out = "riskminer-" + std::string(kind) + " " + std::to_string(kSchemaVersion);
  for (const std::string& dim : dims) out += " " + dim;
  out += "\n";
  return out;
}

int parse_dim(std::string_view field, const char* what) {
  long long value = parse_int(field);
  if (value < 0) fail(ErrorCode::MalformedRecord, std::string(what) + " is negative");
  return static_cast<int>(value);
}

void append_row(std::string& out, const double* values, int n) {
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += format_double(values[i]);
  }
  out += '\n';
}

// Rebuilds the derived lookup tables of a vocabulary whose tokens/df are set.
void finish_vocabulary(Vocabulary& vocab) {
  for (std::size_t i = 0; i < vocab.tokens.size(); ++i)
    vocab.index[vocab.tokens[i]] = static_cast<int>(i);
  if (vocab.index.size() != vocab.tokens.size())
    fail(ErrorCode::MalformedRecord, "duplicate token in vocabulary");
}

void serialize_labels(std::string& out, const std::vector<std::string>& labels) {
  for (const std::string& label : labels) out += "label " + encode_field(label) + "\n";
}

std::vector<std::string> parse_labels(LineParser& parser, int n_classes) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n_classes));
  for (int i = 0; i < n_classes; ++i) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != 2 || fields[0] != "label")
      fail(ErrorCode::MalformedRecord, "expected a label line");
    labels.push_back(decode_field(fields[1]));
  }
  return labels;
}

Vector parse_vector_line(LineParser& parser, std::string_view tag, int n) {
  std::vector<std::string_view> fields = split_whitespace(parser.next());
  if (fields.size() != static_cast<std::size_t>(n) + 1 || fields[0] != tag)
    fail(ErrorCode::MalformedRecord, "expected '" + std::string(tag) + "' line with " +
                                         std::to_string(n) + " values");
  Vector values(n);
  for (int i = 0; i < n; ++i) values[i] = parse_double(fields[i + 1]);
  return values;
}

void serialize_matrix(std::string& out, std::string_view name, const Matrix& m) {
  out += "matrix " + std::string(name) + " " + std::to_string(m.rows()) + " " +
         std::to_string(m.cols()) + "\n";
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    append_row(out, row.data(), static_cast<int>(m.cols()));
  }
}

Matrix parse_matrix(LineParser& parser, std::string_view name) {
  std::vector<std::string_view> fields = split_whitespace(parser.next());
  if (fields.size() != 4 || fields[0] != "matrix" || fields[1] != name)
    fail(ErrorCode::MalformedRecord, "expected 'matrix " + std::string(name) + "' line");
  int rows = parse_dim(fields[2], "matrix rows");
  int cols = parse_dim(fields[3], "matrix cols");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::vector<std::string_view> row = split_whitespace(parser.next());
    if (row.size() != static_cast<std::size_t>(cols))
      fail(ErrorCode::MalformedRecord, "matrix row has wrong width");
    for (int c = 0; c < cols; ++c) m(r, c) = parse_double(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::string serialize_nb(const NBModel& model) {
  int n_classes = static_cast<int>(model.labels.size());
  std::string out = header_line(
      "model", {"nb", std::to_string(n_classes), std::to_string(model.vocab_size),
                format_double(model.alpha)});
  serialize_labels(out, model.labels);
  out += "prior";
  for (int c = 0; c < n_classes; ++c) out += " " + format_double(model.log_prior[c]);
  out += "\n";
  std::vector<double> row(static_cast<std::size_t>(model.vocab_size));
  for (int c = 0; c < n_classes; ++c) {
    out += "class " + std::to_string(c) + " ";
    for (int v = 0; v < model.vocab_size; ++v)
      row[static_cast<std::size_t>(v)] = model.log_likelihood(c, v);
    append_row(out, row.data(), model.vocab_size);
  }
  return out;
}

NBModel parse_nb(LineParser& parser, const std::vector<std::string_view>& dims) {
  NBModel model;
  int n_classes = parse_dim(dims[1], "class count");
  model.vocab_size = parse_dim(dims[2], "vocab size");
  model.alpha = parse_double(dims[3]);
  model.labels = parse_labels(parser, n_classes);
  model.log_prior = parse_vector_line(parser, "prior", n_classes);
  model.log_likelihood = Matrix(n_classes, model.vocab_size);
  for (int c = 0; c < n_classes; ++c) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != static_cast<std::size_t>(model.vocab_size) + 2 ||
        fields[0] != "class" || parse_int(fields[1]) != c)
      fail(ErrorCode::MalformedRecord, "expected 'class " + std::to_string(c) + "' line");
    for (int v = 0; v < model.vocab_size; ++v)
      model.log_likelihood(c, v) = parse_double(fields[static_cast<std::size_t>(v) + 2]);
  }
  return model;
}

std::string serialize_svm(const LinearSvmModel& model) {
  int n_classes = static_cast<int>(model.labels.size());
  int n_features = static_cast<int>(model.weights.cols());
  std::string out =
      header_line("model", {"svm", std::to_string(n_classes), std::to_string(n_features),
                            format_double(model.lambda)});
  serialize_labels(out, model.labels);
  out += "bias";
  for (int c = 0; c < n_classes; ++c) out += " " + format_double(model.bias[c]);
  out += "\n";
  std::vector<double> row(static_cast<std::size_t>(n_features));
  for (int c = 0; c < n_classes; ++c) {
    out += "weights " + std::to_string(c) + " ";
    for (int f = 0; f < n_features; ++f) row[static_cast<std::size_t>(f)] = model.weights(c, f);
    append_row(out, row.data(), n_features);
  }
  return out;
}

LinearSvmModel parse_svm(LineParser& parser, const std::vector<std::string_view>& dims) {
  LinearSvmModel model;
  int n_classes = parse_dim(dims[1], "class count");
  int n_features = parse_dim(dims[2], "feature count");
  model.lambda = parse_double(dims[3]);
  model.labels = parse_labels(parser, n_classes);
  model.bias = parse_vector_line(parser, "bias", n_classes);
  model.weights = Matrix(n_classes, n_features);
  for (int c = 0; c < n_classes; ++c) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != static_cast<std::size_t>(n_features) + 2 || fields[0] != "weights" ||
        parse_int(fields[1]) != c)
      fail(ErrorCode::MalformedRecord, "expected 'weights " + std::to_string(c) + "' line");
    for (int f = 0; f < n_features; ++f)
      model.weights(c, f) = parse_double(fields[static_cast<std::size_t>(f) + 2]);
  }
  return model;
}

std::string serialize_forest(const ForestModel& model) {
  int n_classes = static_cast<int>(model.labels.size());
  std::string out = header_line(
      "model",
      {"forest", std::to_string(n_classes), std::to_string(model.n_features),
       std::to_string(model.config.n_trees), std::to_string(model.config.max_depth),
       std::to_string(model.config.min_leaf), std::to_string(model.config.mtry),
       std::to_string(model.config.seed)});
  serialize_labels(out, model.labels);
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    out += "tree " + std::to_string(t) + " " + std::to_string(model.trees[t].nodes.size()) + "\n";
    for (const TreeNode& node : model.trees[t].nodes) {
      out += "node " + std::to_string(node.feature) + " " + format_double(node.threshold) + " " +
             std::to_string(node.left) + " " + std::to_string(node.right);
      for (int count : node.counts) out += " " + std::to_string(count);
      out += "\n";
    }
  }
  return out;
}

ForestModel parse_forest(LineParser& parser, const std::vector<std::string_view>& dims) {
  ForestModel model;
  int n_classes = parse_dim(dims[1], "class count");
  model.n_features = parse_dim(dims[2], "feature count");
  model.config.n_trees = parse_dim(dims[3], "tree count");
  model.config.max_depth = static_cast<int>(parse_int(dims[4]));
  model.config.min_leaf = parse_dim(dims[5], "min leaf");
  model.config.mtry = parse_dim(dims[6], "mtry");
  model.config.seed = static_cast<std::uint64_t>(parse_int(dims[7]));
  model.labels = parse_labels(parser, n_classes);
  model.trees.reserve(static_cast<std::size_t>(model.config.n_trees));
  for (int t = 0; t < model.config.n_trees; ++t) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != 3 || fields[0] != "tree" || parse_int(fields[1]) != t)
      fail(ErrorCode::MalformedRecord, "expected 'tree " + std::to_string(t) + "' line");
    int n_nodes = parse_dim(fields[2], "node count");
    Tree tree;
    tree.nodes.reserve(static_cast<std::size_t>(n_nodes));
    for (int n = 0; n < n_nodes; ++n) {
      std::vector<std::string_view> node_fields = split_whitespace(parser.next());
      if (node_fields.size() != static_cast<std::size_t>(n_classes) + 5 ||
          node_fields[0] != "node")
        fail(ErrorCode::MalformedRecord, "expected a node line with " +
                                             std::to_string(n_classes) + " counts");
      TreeNode node;
      node.feature = static_cast<int>(parse_int(node_fields[1]));
      node.threshold = parse_double(node_fields[2]);
      node.left = static_cast<int>(parse_int(node_fields[3]));
      node.right = static_cast<int>(parse_int(node_fields[4]));
      node.counts.resize(static_cast<std::size_t>(n_classes));
      for (int c = 0; c < n_classes; ++c)
        node.counts[static_cast<std::size_t>(c)] =
            static_cast<int>(parse_int(node_fields[static_cast<std::size_t>(c) + 5]));
      tree.nodes.push_back(std::move(node));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::string serialize_recurrent(const RecurrentModel& model) {
  std::string kind = model.kind == RecurrentKind::lstm ? "lstm" : "rnn";
  std::string out = header_line(
      "model", {kind, std::to_string(model.vocab_size), std::to_string(model.dim),
                std::to_string(model.hidden), std::to_string(model.labels.size()),
                std::to_string(model.t_max)});
  serialize_labels(out, model.labels);
  serialize_matrix(out, "embedding", model.embedding);
  serialize_matrix(out, "w_x", model.w_x);
  serialize_matrix(out, "w_h", model.w_h);
  serialize_matrix(out, "b", model.b);
  serialize_matrix(out, "w_out", model.w_out);
  serialize_matrix(out, "b_out", model.b_out);
  return out;
}

RecurrentModel parse_recurrent(LineParser& parser, const std::vector<std::string_view>& dims) {
  RecurrentModel model;
  model.kind = dims[0] == "lstm" ? RecurrentKind::lstm : RecurrentKind::rnn;
  model.vocab_size = parse_dim(dims[1], "vocab size");
  model.dim = parse_dim(dims[2], "embedding dim");
  model.hidden = parse_dim(dims[3], "hidden size");
  model.n_classes = parse_dim(dims[4], "class count");
  model.t_max = parse_dim(dims[5], "t_max");
  int n_classes = model.n_classes;
  model.labels = parse_labels(parser, n_classes);
  model.embedding = parse_matrix(parser, "embedding");
  model.w_x = parse_matrix(parser, "w_x");
  model.w_h = parse_matrix(parser, "w_h");
  model.b = parse_matrix(parser, "b");
  model.w_out = parse_matrix(parser, "w_out");
  model.b_out = parse_matrix(parser, "b_out");
  int gates = model.kind == RecurrentKind::lstm ? 4 : 1;
  if (model.embedding.rows() != model.vocab_size || model.embedding.cols() != model.dim ||
      model.w_x.rows() != gates * model.hidden || model.w_x.cols() != model.dim ||
      model.w_h.rows() != gates * model.hidden || model.w_h.cols() != model.hidden ||
      model.b.rows() != gates * model.hidden || model.b.cols() != 1 ||
      model.w_out.rows() != n_classes || model.w_out.cols() != model.hidden ||
      model.b_out.rows() != n_classes || model.b_out.cols() != 1)
    fail(ErrorCode::MalformedRecord, "recurrent model blocks do not match its header");
  return model;
}

}  // namespace

std::string serialize_tokens(const std::vector<TokensRecord>& records) {
  std::string out;
  for (const TokensRecord& record : records) {
    nlohmann::ordered_json obj;
    obj["id"] = record.id;
    if (record.label) obj["label"] = *record.label;
    obj["tokens"] = record.tokens;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<TokensRecord> parse_tokens(std::string_view content) {
  std::vector<TokensRecord> records;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view raw = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedRecord,
           "line " + std::to_string(line_no) + ": " + std::string(e.what()));
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("tokens") || !obj["tokens"].is_array())
      fail(ErrorCode::MalformedRecord,
           "line " + std::to_string(line_no) + ": need string id and token array");
    TokensRecord record;
    record.id = obj["id"].get<std::string>();
    if (obj.contains("label") && !obj["label"].is_null()) {
      if (!obj["label"].is_string())
        fail(ErrorCode::MalformedRecord,
             "line " + std::to_string(line_no) + ": label must be a string");
      record.label = obj["label"].get<std::string>();
    }
    for (const auto& token : obj["tokens"]) {
      if (!token.is_string())
        fail(ErrorCode::MalformedRecord,
             "line " + std::to_string(line_no) + ": tokens must be strings");
      record.tokens.push_back(token.get<std::string>());
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string serialize_sparse_matrix(const std::vector<SparseVector>& rows, int cols) {
  std::string out = header_line(
      "features", {std::to_string(rows.size()), std::to_string(cols)});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, value] : rows[r].entries) {
      if (col < 0 || col >= cols)
        fail(ErrorCode::DimensionMismatch, "feature index out of range");
      out += std::to_string(r) + " " + std::to_string(col) + " " + format_double(value) + "\n";
    }
  }
  return out;
}

std::pair<std::vector<SparseVector>, int> parse_sparse_matrix(std::string_view content) {
  LineParser parser(content);
  std::vector<std::string_view> dims = parse_header(parser, "features", 2);
  int n_rows = parse_dim(dims[0], "row count");
  int cols = parse_dim(dims[1], "column count");
  std::vector<SparseVector> rows(static_cast<std::size_t>(n_rows));
  int last_row = -1;
  int last_col = -1;
  while (!parser.done()) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != 3)
      fail(ErrorCode::MalformedRecord, "expected 'row col value' triplets");
    int row = parse_dim(fields[0], "row");
    int col = parse_dim(fields[1], "col");
    double value = parse_double(fields[2]);
    if (row >= n_rows || col >= cols)
      fail(ErrorCode::MalformedRecord, "triplet outside the declared shape");
    if (row < last_row || (row == last_row && col <= last_col))
      fail(ErrorCode::MalformedRecord, "triplets must be in row-major order");
    last_row = row;
    last_col = col;
    if (value != 0.0) rows[static_cast<std::size_t>(row)].entries.emplace_back(col, value);
  }
  return {std::move(rows), cols};
}

std::string serialize_tfidf(const TfidfModel& model) {
  std::string out = header_line(
      "tfidf", {std::to_string(model.vocab.size()), std::to_string(model.vocab.n_docs)});
  for (std::size_t i = 0; i < model.vocab.tokens.size(); ++i) {
    out += model.vocab.tokens[i] + " " + std::to_string(i) + " " +
           std::to_string(model.vocab.df[i]) + " " + format_double(model.idf[static_cast<int>(i)]) +
           "\n";
  }
  return out;
}

TfidfModel parse_tfidf(std::string_view content) {
  LineParser parser(content);
  std::vector<std::string_view> dims = parse_header(parser, "tfidf", 2);
  int vocab_size = parse_dim(dims[0], "vocab size");
  TfidfModel model;
  model.vocab.n_docs = parse_dim(dims[1], "doc count");
  model.vocab.tokens.reserve(static_cast<std::size_t>(vocab_size));
  model.vocab.df.reserve(static_cast<std::size_t>(vocab_size));
  model.idf = Vector(vocab_size);
  for (int i = 0; i < vocab_size; ++i) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != 4 || parse_int(fields[1]) != i)
      fail(ErrorCode::MalformedRecord, "expected 'token index df idf' line " + std::to_string(i));
    model.vocab.tokens.emplace_back(fields[0]);
    model.vocab.df.push_back(static_cast<int>(parse_int(fields[2])));
    model.idf[i] = parse_double(fields[3]);
  }
  finish_vocabulary(model.vocab);
  return model;
}

std::string serialize_embedding(const EmbeddingModel& model) {
  int dim = static_cast<int>(model.input_vectors.cols());
  std::string out = header_line(
      "embedding", {std::to_string(model.vocab.size()), std::to_string(dim),
                    std::to_string(model.vocab.n_docs)});
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < model.vocab.tokens.size(); ++i) {
    out += model.vocab.tokens[i] + " " + std::to_string(model.vocab.df[i]) + " ";
    for (int c = 0; c < dim; ++c)
      row[static_cast<std::size_t>(c)] = model.input_vectors(static_cast<Eigen::Index>(i), c);
    append_row(out, row.data(), dim);
  }
  return out;
}

EmbeddingModel parse_embedding(std::string_view content) {
  LineParser parser(content);
  std::vector<std::string_view> dims = parse_header(parser, "embedding", 3);
  int vocab_size = parse_dim(dims[0], "vocab size");
  int dim = parse_dim(dims[1], "embedding dim");
  EmbeddingModel model;
  model.dim = dim;
  model.vocab.n_docs = parse_dim(dims[2], "doc count");
  model.input_vectors = Matrix(vocab_size, dim);
  for (int i = 0; i < vocab_size; ++i) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != static_cast<std::size_t>(dim) + 2)
      fail(ErrorCode::MalformedRecord, "expected 'token df weights...' line");
    model.vocab.tokens.emplace_back(fields[0]);
    model.vocab.df.push_back(static_cast<int>(parse_int(fields[1])));
    for (int c = 0; c < dim; ++c)
      model.input_vectors(i, c) = parse_double(fields[static_cast<std::size_t>(c) + 2]);
  }
  finish_vocabulary(model.vocab);
  return model;
}

std::string serialize_topics(const TopicModel& model) {
  int k = static_cast<int>(model.phi.rows());
  int vocab_size = static_cast<int>(model.phi.cols());
  int n_docs = static_cast<int>(model.theta.rows());
  std::string out = header_line(
      "topics", {std::to_string(k), std::to_string(vocab_size), std::to_string(n_docs),
                 format_double(model.config.alpha), format_double(model.config.beta),
                 std::to_string(model.config.iterations), std::to_string(model.config.seed)});
  for (const std::string& token : model.tokens) out += "token " + token + "\n";
  std::vector<double> row(static_cast<std::size_t>(vocab_size));
  for (int t = 0; t < k; ++t) {
    out += "phi " + std::to_string(t) + " ";
    for (int v = 0; v < vocab_size; ++v) row[static_cast<std::size_t>(v)] = model.phi(t, v);
    append_row(out, row.data(), vocab_size);
  }
  row.resize(static_cast<std::size_t>(k));
  for (int d = 0; d < n_docs; ++d) {
    out += "theta " + std::to_string(d) + " ";
    for (int t = 0; t < k; ++t) row[static_cast<std::size_t>(t)] = model.theta(d, t);
    append_row(out, row.data(), k);
  }
  return out;
}

TopicModel parse_topics(std::string_view content) {
  LineParser parser(content);
  std::vector<std::string_view> dims = parse_header(parser, "topics", 7);
  int k = parse_dim(dims[0], "topic count");
  int vocab_size = parse_dim(dims[1], "vocab size");
  int n_docs = parse_dim(dims[2], "doc count");
  TopicModel model;
  model.config.K = k;
  model.config.alpha = parse_double(dims[3]);
  model.config.beta = parse_double(dims[4]);
  model.config.iterations = parse_dim(dims[5], "iterations");
  model.config.seed = static_cast<std::uint64_t>(parse_int(dims[6]));
  model.tokens.reserve(static_cast<std::size_t>(vocab_size));
  for (int v = 0; v < vocab_size; ++v) {
    std::vector<std::string_view> fields = split_whitespace(parser.next());
    if (fields.size() != 2 || fields[0] != "token")
      fail(ErrorCode::MalformedRecord, "expected a token line");
    model.tokens.emplace_back(fields[1]);
  }
  model.phi = Matrix(k, vocab_size);
  for (int t = 0; t < k; ++t) {
    Vector row = parse_vector_line(parser, "phi", vocab_size + 1);
    if (static_cast<int>(row[0]) != t)
      fail(ErrorCode::MalformedRecord, "phi rows out of order");
    model.phi.row(t) = row.segment(1, vocab_size).transpose();
  }
  model.theta = Matrix(n_docs, k);
  for (int d = 0; d < n_docs; ++d) {
    Vector row = parse_vector_line(parser, "theta", k + 1);
    if (static_cast<int>(row[0]) != d)
      fail(ErrorCode::MalformedRecord, "theta rows out of order");
    model.theta.row(d) = row.segment(1, k).transpose();
  }
  return model;
}

std::string model_kind(const AnyModel& model) {
  if (std::holds_alternative<NBModel>(model)) return "nb";
  if (std::holds_alternative<LinearSvmModel>(model)) return "svm";
  if (std::holds_alternative<ForestModel>(model)) return "forest";
  return std::get<RecurrentModel>(model).kind == RecurrentKind::lstm ? "lstm" : "rnn";
}

std::string serialize_model(const AnyModel& model) {
  if (const auto* nb = std::get_if<NBModel>(&model)) return serialize_nb(*nb);
  if (const auto* svm = std::get_if<LinearSvmModel>(&model)) return serialize_svm(*svm);
  if (const auto* forest = std::get_if<ForestModel>(&model)) return serialize_forest(*forest);
  return serialize_recurrent(std::get<RecurrentModel>(model));
}

AnyModel parse_model(std::string_view content) {
  LineParser parser(content);
  // The dimension count depends on the model kind, so re-scan the header.
  LineParser peek(content);
  std::vector<std::string_view> head = split_whitespace(peek.next());
  if (head.size() < 3 || head[0] != "riskminer-model")
    fail(ErrorCode::MalformedRecord, "expected 'riskminer-model' artifact");
  std::string_view kind = head[2];
  std::size_t n_dims = 0;
  if (kind == "nb" || kind == "svm")
    n_dims = 4;
  else if (kind == "forest")
    n_dims = 8;
  else if (kind == "rnn" || kind == "lstm")
    n_dims = 6;
  else
    fail(ErrorCode::MalformedRecord, "unknown model kind '" + std::string(kind) + "'");
  std::vector<std::string_view> dims = parse_header(parser, "model", n_dims);
  if (kind == "nb") return parse_nb(parser, dims);
  if (kind == "svm") return parse_svm(parser, dims);
  if (kind == "forest") return parse_forest(parser, dims);
  return parse_recurrent(parser, dims);
}

void save_text(const std::string& path, std::string_view content) {
  atomic_write_file(path, content);
}

std::string load_text(const std::string& path) { return read_file(path); }

}  // namespace riskminer
