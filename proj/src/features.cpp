#include "riskminer/features.hpp"

#include <cmath>
#include <set>

#include "riskminer/error.hpp"

namespace riskminer {

Vector SparseVector::to_dense(int dim) const {
  Vector dense = Vector::Zero(dim);
  for (const auto& [index, value] : entries) {
    if (index < 0 || index >= dim)
      fail(ErrorCode::IndexOutOfRange,
           "sparse index " + std::to_string(index) + " outside dimension " +
               std::to_string(dim));
    dense[index] = value;
  }
  return dense;
}

Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& docs,
                            int min_df, double max_df_ratio) {
  if (docs.empty()) fail(ErrorCode::EmptyInput, "no documents");

  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    std::set<std::string> seen(doc.tokens.begin(), doc.tokens.end());
    for (const auto& token : seen) ++df[token];
  }

  Vocabulary vocab;
  vocab.n_docs = static_cast<int>(docs.size());
  for (const auto& [token, count] : df) {  // map iteration is lexicographic
    if (count < min_df) continue;
    if (static_cast<double>(count) / vocab.n_docs > max_df_ratio) continue;
    vocab.index.emplace(token, static_cast<int>(vocab.tokens.size()));
    vocab.tokens.push_back(token);
    vocab.df.push_back(count);
  }
  if (vocab.tokens.empty())
    fail(ErrorCode::EmptyVocabulary, "all tokens filtered out");
  return vocab;
}

SparseVector bow(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  std::map<int, double> counts;
  for (const auto& token : tokens) {
    const int index = vocab.lookup(token);
    if (index >= 0) counts[index] += 1.0;
  }
  SparseVector vec;
  vec.entries.assign(counts.begin(), counts.end());
  return vec;
}

TfidfModel fit_idf(const Vocabulary& vocab) {
  TfidfModel model{vocab, Vector(vocab.size())};
  for (int i = 0; i < vocab.size(); ++i)
    model.idf[i] = std::log(static_cast<double>(vocab.n_docs) / (1.0 + vocab.df[i]));
  return model;
}

SparseVector tfidf(const std::vector<std::string>& tokens, const TfidfModel& model) {
  SparseVector counts = bow(tokens, model.vocab);
  SparseVector vec;
  for (const auto& [index, count] : counts.entries) {
    const double value = count * model.idf[index];
    if (value != 0.0) vec.entries.emplace_back(index, value);
  }
  return vec;
}

Vector fuse_features(const SparseVector& tfidf_vec, int vocab_size,
                     const Vector& embedding) {
  for (const auto& [index, value] : tfidf_vec.entries) {
    (void)value;
    if (index >= vocab_size)
      fail(ErrorCode::DimensionMismatch,
           "tf-idf index " + std::to_string(index) + " outside vocabulary of " +
               std::to_string(vocab_size));
  }
  Vector fused = Vector::Zero(vocab_size + embedding.size());
  for (const auto& [index, value] : tfidf_vec.entries) fused[index] = value;
  fused.tail(embedding.size()) = embedding;
  return fused;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimensionMismatch, "cosine over unequal lengths");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) fail(ErrorCode::ZeroVector, "cosine of zero vector");
  return a.dot(b) / (na * nb);
}

}  // namespace riskminer
