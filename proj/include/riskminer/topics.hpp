#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/features.hpp"
#include "riskminer/rng.hpp"

namespace riskminer {

struct LdaConfig {
  int K = 10;
  double alpha = 0.0;  // 0 = auto (50/K)
  double beta = 0.01;
  int iterations = 200;
  std::uint64_t seed = 0;

  double resolved_alpha() const { return alpha > 0.0 ? alpha : 50.0 / K; }
};

struct TopicModel {
  Matrix phi;    // K x V, rows sum to 1
  Matrix theta;  // D x K, rows sum to 1
  LdaConfig config;
  std::vector<std::string> tokens;  // index-aligned vocabulary tokens
};

// Collapsed Gibbs chain over token-topic assignments, exposed sweep-by-sweep
// so tests can check count conservation between sweeps.
class GibbsLda {
 public:
  // docs: one expanded token-id list per document, all ids in [0, vocab_size).
  GibbsLda(std::vector<std::vector<int>> docs, int vocab_size,
           const LdaConfig& config);

  void sweep();

  int sweeps_done() const { return sweeps_; }
  const std::vector<std::vector<int>>& doc_topic_counts() const { return n_dk_; }
  const std::vector<std::vector<int>>& topic_word_counts() const { return n_kw_; }
  const std::vector<int>& topic_counts() const { return n_k_; }
  const std::vector<std::vector<int>>& docs() const { return docs_; }

  Matrix estimate_phi() const;
  Matrix estimate_theta() const;

 private:
  int sample_topic(int doc, int word);

  std::vector<std::vector<int>> docs_;
  std::vector<std::vector<int>> z_;     // per-token topic assignment
  std::vector<std::vector<int>> n_dk_;  // D x K
  std::vector<std::vector<int>> n_kw_;  // K x V
  std::vector<int> n_k_;                // K
  int vocab_size_;
  double alpha_, beta_;
  int k_;
  Rng rng_;
  int sweeps_ = 0;
};

// bows are raw term counts over vocab; every document needs >= 1 in-vocab
// token (EmptyDocument otherwise).
TopicModel fit_lda(const std::vector<SparseVector>& bows, const Vocabulary& vocab,
                   const LdaConfig& config);

// n highest-phi tokens of topic k; ties broken lexicographically.
std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      int k, int n);

Vector doc_topics(const TopicModel& model, int doc_index);

// Distinct in-model tokens of the document ranked by TF-IDF weight
// descending, ties lexicographic. Zero-weight tokens are kept in the ranking.
std::vector<std::pair<std::string, double>> extract_keywords(
    const std::vector<std::string>& tokens, const TfidfModel& model, int n);

// One block per topic: "topic <k>" then n "token probability" lines.
std::string topic_report(const TopicModel& model, int n_terms);

}  // namespace riskminer
