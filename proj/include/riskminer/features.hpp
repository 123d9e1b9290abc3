#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/preprocess.hpp"

namespace riskminer {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Token index over a tokenized corpus. Indices are assigned in lexicographic
// token order so identical corpora map to identical vocabularies everywhere.
struct Vocabulary {
  std::vector<std::string> tokens;    // index -> token, sorted
  std::map<std::string, int> index;   // token -> index
  std::vector<int> df;                // documents containing tokens[i]
  int n_docs = 0;

  int size() const { return static_cast<int>(tokens.size()); }

  // -1 when the token is out of vocabulary.
  int lookup(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? -1 : it->second;
  }
};

// Ascending indices, no stored zeros.
struct SparseVector {
  std::vector<std::pair<int, double>> entries;

  Vector to_dense(int dim) const;
};

struct TfidfModel {
  Vocabulary vocab;
  Vector idf;  // idf[i] = ln(n_docs / (1 + df[i])); negatives permitted
};

Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& docs,
                            int min_df = 1, double max_df_ratio = 1.0);

SparseVector bow(const std::vector<std::string>& tokens, const Vocabulary& vocab);

TfidfModel fit_idf(const Vocabulary& vocab);

// count(t) * idf(t) per token; exact zero products are dropped.
SparseVector tfidf(const std::vector<std::string>& tokens, const TfidfModel& model);

// Densified TF-IDF block followed by the embedding block.
Vector fuse_features(const SparseVector& tfidf_vec, int vocab_size,
                     const Vector& embedding);

double cosine_similarity(const Vector& a, const Vector& b);

}  // namespace riskminer
