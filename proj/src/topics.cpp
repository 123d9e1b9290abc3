#include "riskminer/topics.hpp"

#include <algorithm>
#include <cmath>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"

namespace riskminer {

GibbsLda::GibbsLda(std::vector<std::vector<int>> docs, int vocab_size,
                   const LdaConfig& config)
    : docs_(std::move(docs)),
      vocab_size_(vocab_size),
      alpha_(config.resolved_alpha()),
      beta_(config.beta),
      k_(config.K),
      rng_(config.seed) {
  if (k_ < 1 || !(beta_ > 0.0) || !(alpha_ > 0.0) || config.iterations < 1)
    fail(ErrorCode::InvalidConfig, "lda config out of range");

  const int d = static_cast<int>(docs_.size());
  n_dk_.assign(d, std::vector<int>(k_, 0));
  n_kw_.assign(k_, std::vector<int>(vocab_size_, 0));
  n_k_.assign(k_, 0);
  z_.resize(d);

  for (int doc = 0; doc < d; ++doc) {
    z_[doc].resize(docs_[doc].size());
    for (std::size_t i = 0; i < docs_[doc].size(); ++i) {
      const int word = docs_[doc][i];
      const int topic = static_cast<int>(rng_.below(k_));
      z_[doc][i] = topic;
      ++n_dk_[doc][topic];
      ++n_kw_[topic][word];
      ++n_k_[topic];
    }
  }
}

int GibbsLda::sample_topic(int doc, int word) {
  // p(k) ∝ (n_dk + α)(n_kw + β)/(n_k + Vβ), over the decremented counts
  double total = 0.0;
  std::vector<double> cumulative(k_);
  for (int k = 0; k < k_; ++k) {
    total += (n_dk_[doc][k] + alpha_) * (n_kw_[k][word] + beta_) /
             (n_k_[k] + vocab_size_ * beta_);
    cumulative[k] = total;
  }
  const double u = rng_.uniform() * total;
  for (int k = 0; k < k_; ++k)
    if (u < cumulative[k]) return k;
  return k_ - 1;
}

void GibbsLda::sweep() {
  for (std::size_t doc = 0; doc < docs_.size(); ++doc) {
    for (std::size_t i = 0; i < docs_[doc].size(); ++i) {
      const int word = docs_[doc][i];
      const int old_topic = z_[doc][i];
      --n_dk_[doc][old_topic];
      --n_kw_[old_topic][word];
      --n_k_[old_topic];

      const int topic = sample_topic(static_cast<int>(doc), word);
      z_[doc][i] = topic;
      ++n_dk_[doc][topic];
      ++n_kw_[topic][word];
      ++n_k_[topic];
    }
  }
  ++sweeps_;
}

Matrix GibbsLda::estimate_phi() const {
  Matrix phi(k_, vocab_size_);
  for (int k = 0; k < k_; ++k) {
    const double denom = n_k_[k] + vocab_size_ * beta_;
    for (int w = 0; w < vocab_size_; ++w)
      phi(k, w) = (n_kw_[k][w] + beta_) / denom;
  }
  return phi;
}

Matrix GibbsLda::estimate_theta() const {
  Matrix theta(static_cast<int>(docs_.size()), k_);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const double denom = static_cast<double>(docs_[d].size()) + k_ * alpha_;
    for (int k = 0; k < k_; ++k)
      theta(static_cast<int>(d), k) = (n_dk_[d][k] + alpha_) / denom;
  }
  return theta;
}

TopicModel fit_lda(const std::vector<SparseVector>& bows, const Vocabulary& vocab,
                   const LdaConfig& config) {
  std::vector<std::vector<int>> docs;
  docs.reserve(bows.size());
  for (std::size_t d = 0; d < bows.size(); ++d) {
    std::vector<int> expanded;
    for (const auto& [index, count] : bows[d].entries) {
      if (index < 0 || index >= vocab.size())
        fail(ErrorCode::IndexOutOfRange, "bow index outside vocabulary");
      for (int c = 0; c < static_cast<int>(count); ++c) expanded.push_back(index);
    }
    if (expanded.empty())
      fail(ErrorCode::EmptyDocument,
           "document " + std::to_string(d) + " has no in-vocabulary tokens");
    docs.push_back(std::move(expanded));
  }

  GibbsLda chain(std::move(docs), vocab.size(), config);
  for (int it = 0; it < config.iterations; ++it) chain.sweep();

  TopicModel model;
  model.phi = chain.estimate_phi();
  model.theta = chain.estimate_theta();
  model.config = config;
  model.tokens = vocab.tokens;
  return model;
}

std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      int k, int n) {
  if (k < 0 || k >= model.phi.rows())
    fail(ErrorCode::TopicOutOfRange, "topic " + std::to_string(k));
  std::vector<std::pair<std::string, double>> terms;
  terms.reserve(model.tokens.size());
  for (std::size_t w = 0; w < model.tokens.size(); ++w)
    terms.emplace_back(model.tokens[w], model.phi(k, static_cast<int>(w)));
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (n < static_cast<int>(terms.size()))
    terms.resize(std::max(n, 0));
  return terms;
}

Vector doc_topics(const TopicModel& model, int doc_index) {
  if (doc_index < 0 || doc_index >= model.theta.rows())
    fail(ErrorCode::IndexOutOfRange, "document " + std::to_string(doc_index));
  return model.theta.row(doc_index).transpose();
}

std::vector<std::pair<std::string, double>> extract_keywords(
    const std::vector<std::string>& tokens, const TfidfModel& model, int n) {
  const SparseVector counts = bow(tokens, model.vocab);
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(counts.entries.size());
  for (const auto& [index, count] : counts.entries)
    ranked.emplace_back(model.vocab.tokens[index], count * model.idf[index]);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (n < static_cast<int>(ranked.size()))
    ranked.resize(std::max(n, 0));
  return ranked;
}

std::string topic_report(const TopicModel& model, int n_terms) {
  std::string out;
  for (int k = 0; k < model.phi.rows(); ++k) {
    out += "topic " + std::to_string(k) + "\n";
    for (const auto& [token, prob] : top_terms(model, k, n_terms))
      out += token + " " + format_double(prob) + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace riskminer
