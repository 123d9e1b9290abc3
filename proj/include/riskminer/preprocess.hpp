#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "riskminer/corpus.hpp"

namespace riskminer {

struct TokenizedDocument {
  std::string doc_id;
  std::vector<std::string> tokens;
};

enum class SegmentMode { delimited, maximal_match };

// What a token must contain to survive cleaning.
enum class CharPolicy { require_alnum, keep_all };

struct PreprocessConfig {
  bool lowercase = true;
  bool strip_markup = true;
  bool stemming = true;
  CharPolicy keep_policy = CharPolicy::require_alnum;
  SegmentMode segment_mode = SegmentMode::delimited;
  std::set<std::string> stopwords;  // entries are lowercased on load
  std::vector<std::string> lexicon; // maximal_match dictionary

  PreprocessConfig();
};

// Removes <...> spans; an unclosed '<' removes through end of text.
std::string strip_markup(std::string_view text);

// delimited: split on whitespace, punctuation characters become their own
// tokens. maximal_match: greedy longest dictionary entry left to right,
// single characters where nothing matches.
std::vector<std::string> segment(std::string_view text, SegmentMode mode,
                                 const std::vector<std::string>& lexicon = {});

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords,
                                          bool fold_case = true);

// Porter (1980) stemming. Tokens containing anything outside [a-z] are
// returned unchanged.
std::string stem(const std::string& token);

// strip_markup -> segment -> lowercase -> character policy -> stopwords ->
// stem, in that fixed order.
TokenizedDocument preprocess_pipeline(const Document& doc,
                                      const PreprocessConfig& config);

const std::set<std::string>& default_stopwords();

// One word per line, '#' comments.
std::set<std::string> load_stopwords(const std::string& path);
std::vector<std::string> load_lexicon(const std::string& path);

std::string lowercase_utf8_ascii(std::string_view text);

}  // namespace riskminer
