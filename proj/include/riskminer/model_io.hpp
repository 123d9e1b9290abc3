#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "riskminer/features.hpp"
#include "riskminer/forest.hpp"
#include "riskminer/naive_bayes.hpp"
#include "riskminer/recurrent.hpp"
#include "riskminer/svm.hpp"
#include "riskminer/topics.hpp"
#include "riskminer/word2vec.hpp"

// Versioned UTF-8 text formats. Every artifact starts with a header line
// "riskminer-<kind> <schema_version> <dims...>"; loading a mismatched
// schema_version fails loudly. Lines starting with '#' are comments and are
// ignored, so callers can prepend provenance. Floats are written as shortest
// round-trip decimals. Word2Vec output vectors and SVM objective history are
// training diagnostics and are not persisted.

namespace riskminer {

// One tokenized document with its optional label, as staged between the
// preprocess and featurize/train steps.
struct TokensRecord {
  std::string id;
  std::optional<std::string> label;
  std::vector<std::string> tokens;
};

std::string serialize_tokens(const std::vector<TokensRecord>& records);
std::vector<TokensRecord> parse_tokens(std::string_view content);

// Sparse triplet matrix: "row col value" lines under the header.
std::string serialize_sparse_matrix(const std::vector<SparseVector>& rows, int cols);
std::pair<std::vector<SparseVector>, int> parse_sparse_matrix(std::string_view content);

std::string serialize_tfidf(const TfidfModel& model);
TfidfModel parse_tfidf(std::string_view content);

std::string serialize_embedding(const EmbeddingModel& model);
EmbeddingModel parse_embedding(std::string_view content);

std::string serialize_topics(const TopicModel& model);
TopicModel parse_topics(std::string_view content);

using AnyModel = std::variant<NBModel, LinearSvmModel, ForestModel, RecurrentModel>;

// "nb", "svm", "forest", "rnn" or "lstm"
std::string model_kind(const AnyModel& model);

std::string serialize_model(const AnyModel& model);
AnyModel parse_model(std::string_view content);

// File wrappers (atomic writes; loads go through the parsers above).
void save_text(const std::string& path, std::string_view content);
std::string load_text(const std::string& path);

}  // namespace riskminer
