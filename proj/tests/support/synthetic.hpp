#pragma once

// Synthetic dataset generators shared by the unit and acceptance suites.
// Everything is driven by riskminer::Rng so tests are reproducible.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskminer/corpus.hpp"
#include "riskminer/features.hpp"
#include "riskminer/rng.hpp"

namespace synthetic {

using riskminer::Matrix;
using riskminer::Rng;

struct LabeledPoints {
  Matrix x;
  std::vector<std::string> labels;
};

// Two well-separated 2-D Gaussian blobs (centers +/- `offset` on both axes).
inline LabeledPoints blobs_2d(int n_per_class, double offset, double spread,
                              std::uint64_t seed) {
  Rng rng(seed);
  LabeledPoints data;
  data.x = Matrix(2 * n_per_class, 2);
  for (int c = 0; c < 2; ++c) {
    double center = c == 0 ? -offset : offset;
    for (int i = 0; i < n_per_class; ++i) {
      int row = c * n_per_class + i;
      data.x(row, 0) = rng.normal(center, spread);
      data.x(row, 1) = rng.normal(center, spread);
      data.labels.push_back(c == 0 ? "neg" : "pos");
    }
  }
  return data;
}

// Labels follow an axis-aligned rule on two of four features; the other two
// are noise. Exactly fittable by a depth-2 tree.
inline LabeledPoints threshold_rule(int n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledPoints data;
  data.x = Matrix(n, 4);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < 4; ++f) data.x(i, f) = rng.uniform();
    bool inner = data.x(i, 0) <= 0.5 && data.x(i, 2) > 0.35;
    data.labels.push_back(inner ? "flag" : "ok");
  }
  return data;
}

// Token-id documents drawn from one of two disjoint 10-word vocabularies:
// topic 0 uses ids [0, 10), topic 1 uses ids [10, 20).
inline std::vector<std::vector<int>> two_topic_docs(int n_docs, int doc_len,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<int>> docs;
  docs.reserve(static_cast<std::size_t>(n_docs));
  for (int d = 0; d < n_docs; ++d) {
    int base = d % 2 == 0 ? 0 : 10;
    std::vector<int> doc;
    doc.reserve(static_cast<std::size_t>(doc_len));
    for (int t = 0; t < doc_len; ++t)
      doc.push_back(base + static_cast<int>(rng.below(10)));
    docs.push_back(std::move(doc));
  }
  return docs;
}

// Word corpus with a planted synonym pair: every tenth slot holds pair_a or
// pair_b chosen by coin flip, so the two tokens are used interchangeably in
// identical context slots and end up with near-identical context
// distributions — which is what drives input-vector similarity under
// negative sampling. Fillers are topical: each document draws from one
// filler group, so random token pairs usually come from different groups
// and stay dissimilar.
inline std::vector<riskminer::TokenizedDocument> planted_pair_docs(
    int n_docs, int doc_len, int filler_vocab, std::uint64_t seed,
    int n_groups = 5) {
  Rng rng(seed);
  std::vector<riskminer::TokenizedDocument> docs;
  const int group_size = filler_vocab / n_groups;
  for (int d = 0; d < n_docs; ++d) {
    riskminer::TokenizedDocument doc;
    doc.doc_id = "doc" + std::to_string(d);
    const int base = (d % n_groups) * group_size;
    for (int t = 0; t < doc_len; ++t) {
      if (t % 10 == 4)
        doc.tokens.push_back(rng.below(2) == 0 ? "pair_a" : "pair_b");
      const int f = base + static_cast<int>(rng.below(
                               static_cast<std::uint64_t>(group_size)));
      doc.tokens.push_back("w" + std::to_string(f));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

// Five-class financial risk corpus: each class has its own keyword pool and
// every document mixes class keywords with shared fillers. Mirrors the kind
// of labeled report snippets the pipeline ingests.
inline riskminer::Corpus risk_corpus(int n_docs, std::uint64_t seed) {
  static const std::vector<std::vector<std::string>> pools = {
      {"market", "volatility", "fluctuation", "price", "competition", "demand",
       "downturn", "exposure"},
      {"credit", "default", "borrower", "loan", "repayment", "collateral",
       "delinquency", "counterparty"},
      {"liquidity", "cash", "funding", "solvency", "withdrawal", "reserves",
       "maturity", "refinancing"},
      {"policy", "regulation", "compliance", "government", "tax", "sanction",
       "legislation", "tariff"},
      {"operational", "process", "system", "fraud", "failure", "staff",
       "disruption", "outage"}};
  static const std::vector<std::string> labels = {"market", "credit", "liquidity",
                                                  "policy", "operational"};
  static const std::vector<std::string> fillers = {
      "company", "quarter", "growth", "performance", "management", "strategy",
      "capital", "investment", "report", "outlook"};

  Rng rng(seed);
  riskminer::Corpus corpus;
  for (int d = 0; d < n_docs; ++d) {
    int c = d % 5;
    std::string text;
    int n_words = 14 + static_cast<int>(rng.below(8));
    for (int w = 0; w < n_words; ++w) {
      if (!text.empty()) text += ' ';
      // ~60% class keywords, 40% shared fillers
      if (rng.uniform() < 0.6) {
        const auto& pool = pools[static_cast<std::size_t>(c)];
        text += pool[rng.below(pool.size())];
      } else {
        text += fillers[rng.below(fillers.size())];
      }
      if (w % 6 == 5) text += ',';
    }
    text += '.';
    riskminer::Document doc;
    doc.id = "doc" + std::to_string(d);
    doc.text = text;
    doc.label = labels[static_cast<std::size_t>(c)];
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

// Sequence task where the first token decides the class and the rest is
// noise — solvable only by carrying early state to the end.
struct SequenceTask {
  std::vector<std::vector<int>> sequences;
  std::vector<std::string> labels;
  int vocab_size = 0;
};

inline SequenceTask first_token_task(int n, int len, int vocab, std::uint64_t seed) {
  Rng rng(seed);
  SequenceTask task;
  task.vocab_size = vocab;
  for (int i = 0; i < n; ++i) {
    std::vector<int> seq;
    int head = i % 2;
    seq.push_back(head);
    for (int t = 1; t < len; ++t)
      seq.push_back(2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(vocab - 2))));
    task.sequences.push_back(std::move(seq));
    task.labels.push_back(head == 0 ? "a" : "b");
  }
  return task;
}

}  // namespace synthetic
