#include "riskminer/preprocess.hpp"

#include <algorithm>
#include <cctype>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"

namespace riskminer {

namespace {

// ---------------------------------------------------------------------------
// Porter stemmer, following the 1980 algorithm: five suffix-rewriting steps,
// each applying only the longest matching suffix rule and only when the
// remaining stem satisfies the rule's measure/letter conditions.

class PorterWord {
 public:
  explicit PorterWord(std::string word) : w_(std::move(word)) {}

  const std::string& str() const { return w_; }
  std::size_t size() const { return w_.size(); }

  bool is_consonant(std::size_t i) const {
    const char c = w_[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
    return true;
  }

  // Number of VC sequences in w_[0, len).
  int measure(std::size_t len) const {
    std::size_t i = 0;
    int m = 0;
    while (i < len && is_consonant(i)) ++i;
    while (true) {
      while (i < len && !is_consonant(i)) ++i;
      if (i >= len) return m;
      ++m;
      while (i < len && is_consonant(i)) ++i;
      if (i >= len) return m;
    }
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!is_consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && is_consonant(len - 1);
  }

  // Ends consonant-vowel-consonant where the final consonant is not w, x, y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1))
      return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::equal(suffix.rbegin(), suffix.rend(), w_.rbegin());
  }

  std::size_t stem_len(std::string_view suffix) const {
    return w_.size() - suffix.size();
  }

  void replace_suffix(std::string_view suffix, std::string_view repl) {
    w_.resize(w_.size() - suffix.size());
    w_.append(repl);
  }

  void truncate(std::size_t len) { w_.resize(len); }

 private:
  std::string w_;
};

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
  int min_measure;  // condition: measure(stem) > min_measure
};

// Applies the longest matching rule of the step; its condition decides
// whether anything changes, shorter matches are never consulted.
void apply_rule_step(PorterWord& word, const std::vector<SuffixRule>& rules) {
  const SuffixRule* best = nullptr;
  for (const auto& rule : rules) {
    if (word.ends_with(rule.suffix) &&
        (!best || rule.suffix.size() > best->suffix.size()))
      best = &rule;
  }
  if (!best) return;
  if (word.measure(word.stem_len(best->suffix)) > best->min_measure)
    word.replace_suffix(best->suffix, best->replacement);
}

void porter_step1a(PorterWord& w) {
  if (w.ends_with("sses")) w.replace_suffix("sses", "ss");
  else if (w.ends_with("ies")) w.replace_suffix("ies", "i");
  else if (w.ends_with("ss")) { /* unchanged */ }
  else if (w.ends_with("s")) w.replace_suffix("s", "");
}

void porter_step1b(PorterWord& w) {
  if (w.ends_with("eed")) {
    if (w.measure(w.stem_len("eed")) > 0) w.replace_suffix("eed", "ee");
    return;
  }
  bool removed = false;
  if (w.ends_with("ed") && w.has_vowel(w.stem_len("ed"))) {
    w.replace_suffix("ed", "");
    removed = true;
  } else if (w.ends_with("ing") && w.has_vowel(w.stem_len("ing"))) {
    w.replace_suffix("ing", "");
    removed = true;
  }
  if (!removed) return;

  if (w.ends_with("at")) w.replace_suffix("at", "ate");
  else if (w.ends_with("bl")) w.replace_suffix("bl", "ble");
  else if (w.ends_with("iz")) w.replace_suffix("iz", "ize");
  else if (w.double_consonant(w.size())) {
    const char last = w.str().back();
    if (last != 'l' && last != 's' && last != 'z') w.truncate(w.size() - 1);
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.replace_suffix("", "e");
  }
}

void porter_step1c(PorterWord& w) {
  if (w.ends_with("y") && w.has_vowel(w.stem_len("y")))
    w.replace_suffix("y", "i");
}

void porter_step2(PorterWord& w) {
  static const std::vector<SuffixRule> rules = {
      {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
      {"anci", "ance", 0},   {"izer", "ize", 0},    {"abli", "able", 0},
      {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
      {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
      {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
      {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
      {"iviti", "ive", 0},   {"biliti", "ble", 0},
  };
  apply_rule_step(w, rules);
}

void porter_step3(PorterWord& w) {
  static const std::vector<SuffixRule> rules = {
      {"icate", "ic", 0}, {"ative", "", 0}, {"alize", "al", 0},
      {"iciti", "ic", 0}, {"ical", "ic", 0}, {"ful", "", 0},
      {"ness", "", 0},
  };
  apply_rule_step(w, rules);
}

void porter_step4(PorterWord& w) {
  static const std::vector<SuffixRule> rules = {
      {"al", "", 1},    {"ance", "", 1}, {"ence", "", 1}, {"er", "", 1},
      {"ic", "", 1},    {"able", "", 1}, {"ible", "", 1}, {"ant", "", 1},
      {"ement", "", 1}, {"ment", "", 1}, {"ent", "", 1},  {"ou", "", 1},
      {"ism", "", 1},   {"ate", "", 1},  {"iti", "", 1},  {"ous", "", 1},
      {"ive", "", 1},   {"ize", "", 1},
  };
  // "ion" needs the extra stem-ends-in-s-or-t condition, so handle the
  // longest-match scan explicitly.
  const SuffixRule* best = nullptr;
  for (const auto& rule : rules) {
    if (w.ends_with(rule.suffix) &&
        (!best || rule.suffix.size() > best->suffix.size()))
      best = &rule;
  }
  const bool ion_matches = w.ends_with("ion");
  if (ion_matches && (!best || best->suffix.size() < 3)) {
    const std::size_t stem = w.stem_len("ion");
    if (w.measure(stem) > 1 && stem >= 1 &&
        (w.str()[stem - 1] == 's' || w.str()[stem - 1] == 't'))
      w.replace_suffix("ion", "");
    return;
  }
  if (best && w.measure(w.stem_len(best->suffix)) > best->min_measure)
    w.replace_suffix(best->suffix, best->replacement);
}

void porter_step5a(PorterWord& w) {
  if (!w.ends_with("e")) return;
  const std::size_t stem = w.stem_len("e");
  const int m = w.measure(stem);
  if (m > 1 || (m == 1 && !w.cvc(stem))) w.replace_suffix("e", "");
}

void porter_step5b(PorterWord& w) {
  if (w.measure(w.size()) > 1 && w.double_consonant(w.size()) &&
      w.str().back() == 'l')
    w.truncate(w.size() - 1);
}

// ---------------------------------------------------------------------------

bool is_ascii_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;  // multi-byte UTF-8 sequences stay inside tokens
  return std::isalnum(u) != 0;
}

std::size_t utf8_char_len(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;  // invalid lead byte, consume one
}

}  // namespace

std::string lowercase_utf8_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

std::string strip_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      const std::size_t close = text.find('>', i + 1);
      if (close == std::string_view::npos) break;  // unclosed: drop the rest
      i = close + 1;
    } else {
      out += text[i];
      ++i;
    }
  }
  return out;
}

std::vector<std::string> segment(std::string_view text, SegmentMode mode,
                                 const std::vector<std::string>& lexicon) {
  std::vector<std::string> tokens;

  if (mode == SegmentMode::delimited) {
    std::string current;
    auto flush = [&] {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (is_ascii_space(c)) {
        flush();
      } else if (is_word_char(c)) {
        current += c;
      } else {
        flush();
        tokens.emplace_back(1, c);  // punctuation becomes its own token
      }
    }
    flush();
    return tokens;
  }

  if (lexicon.empty()) fail(ErrorCode::MissingLexicon, "maximal_match needs a lexicon");
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ascii_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t best_len = 0;
    for (const auto& entry : lexicon) {
      if (entry.size() > best_len && entry.size() <= text.size() - i &&
          text.compare(i, entry.size(), entry) == 0)
        best_len = entry.size();
    }
    if (best_len == 0)
      best_len = utf8_char_len(static_cast<unsigned char>(text[i]));
    tokens.emplace_back(text.substr(i, best_len));
    i += best_len;
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const std::set<std::string>& stopwords,
                                          bool fold_case) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    const std::string key = fold_case ? lowercase_utf8_ascii(token) : token;
    if (stopwords.find(key) == stopwords.end()) kept.push_back(token);
  }
  return kept;
}

std::string stem(const std::string& token) {
  if (token.empty()) return token;
  for (char c : token)
    if (c < 'a' || c > 'z') return token;

  PorterWord word(token);
  porter_step1a(word);
  porter_step1b(word);
  porter_step1c(word);
  porter_step2(word);
  porter_step3(word);
  porter_step4(word);
  porter_step5a(word);
  porter_step5b(word);
  return word.str();
}

TokenizedDocument preprocess_pipeline(const Document& doc,
                                      const PreprocessConfig& config) {
  std::string text = config.strip_markup ? strip_markup(doc.text) : doc.text;
  std::vector<std::string> tokens =
      segment(text, config.segment_mode, config.lexicon);

  if (config.lowercase)
    for (auto& token : tokens) token = lowercase_utf8_ascii(token);

  if (config.keep_policy == CharPolicy::require_alnum) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (auto& token : tokens) {
      if (std::any_of(token.begin(), token.end(), is_word_char))
        kept.push_back(std::move(token));
    }
    tokens = std::move(kept);
  }

  tokens = remove_stopwords(tokens, config.stopwords, config.lowercase);

  if (config.stemming)
    for (auto& token : tokens) token = stem(token);

  return TokenizedDocument{doc.id, std::move(tokens)};
}

namespace {

const char* kDefaultStopwords[] = {
    "a",       "about",   "above",    "after",   "again",      "against",
    "all",     "am",      "an",       "and",     "any",        "are",
    "as",      "at",      "be",       "because", "been",       "before",
    "being",   "below",   "between",  "both",    "but",        "by",
    "can",     "cannot",  "could",    "did",     "do",         "does",
    "doing",   "down",    "during",   "each",    "few",        "for",
    "from",    "further", "had",      "has",     "have",       "having",
    "he",      "her",     "here",     "hers",    "herself",    "him",
    "himself", "his",     "how",      "i",       "if",         "in",
    "into",    "is",      "it",       "its",     "itself",     "just",
    "me",      "more",    "most",     "my",      "myself",     "no",
    "nor",     "not",     "now",      "of",      "off",        "on",
    "once",    "only",    "or",       "other",   "our",        "ours",
    "ourselves", "out",   "over",     "own",     "same",       "she",
    "should",  "so",      "some",     "such",    "than",       "that",
    "the",     "their",   "theirs",   "them",    "themselves", "then",
    "there",   "these",   "they",     "this",    "those",      "through",
    "to",      "too",     "under",    "until",   "up",         "very",
    "was",     "we",      "were",     "what",    "when",       "where",
    "which",   "while",   "who",      "whom",    "why",        "will",
    "with",    "would",   "you",      "your",    "yours",      "yourself",
    "yourselves",
};

}  // namespace

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words(std::begin(kDefaultStopwords),
                                           std::end(kDefaultStopwords));
  return words;
}

PreprocessConfig::PreprocessConfig() : stopwords(default_stopwords()) {}

std::set<std::string> load_stopwords(const std::string& path) {
  std::set<std::string> words;
  for (const auto& raw : read_lines(path)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    words.insert(lowercase_utf8_ascii(line));
  }
  return words;
}

std::vector<std::string> load_lexicon(const std::string& path) {
  std::vector<std::string> entries;
  for (const auto& raw : read_lines(path)) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    entries.emplace_back(line);
  }
  return entries;
}

}  // namespace riskminer
