#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "riskminer/error.hpp"
#include "riskminer/preprocess.hpp"
#include "riskminer/text_format.hpp"

using namespace riskminer;
using Tokens = std::vector<std::string>;

TEST_CASE("delimited segmentation splits punctuation into its own tokens") {
  CHECK(segment("credit risk, rising.", SegmentMode::delimited) ==
        Tokens{"credit", "risk", ",", "rising", "."});
  CHECK(segment("", SegmentMode::delimited).empty());
  CHECK(segment("a-b c", SegmentMode::delimited) == Tokens{"a", "-", "b", "c"});
  CHECK(segment("12.5%", SegmentMode::delimited) == Tokens{"12", ".", "5", "%"});
}

TEST_CASE("maximal match prefers the longest lexicon entry") {
  Tokens lexicon = {"ab", "abc", "d"};
  CHECK(segment("abcd", SegmentMode::maximal_match, lexicon) == Tokens{"abc", "d"});
  CHECK(segment("abd", SegmentMode::maximal_match, lexicon) == Tokens{"ab", "d"});
  // unmatched characters fall back to singletons
  CHECK(segment("xabc", SegmentMode::maximal_match, lexicon) == Tokens{"x", "abc"});
  CHECK_THROWS_AS(segment("abcd", SegmentMode::maximal_match, {}), Error);
  try {
    segment("abcd", SegmentMode::maximal_match, {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingLexicon);
  }
}

TEST_CASE("strip_markup removes tag spans") {
  CHECK(strip_markup("a <b>bold</b> move") == "a bold move");
  CHECK(strip_markup("no tags") == "no tags");
  CHECK(strip_markup("cut <here everything goes") == "cut ");
  CHECK(strip_markup("<only></only>") == "");
}

TEST_CASE("stopword removal folds case and keeps order") {
  std::set<std::string> sw = {"the", "is"};
  CHECK(remove_stopwords({"The", "market", "is", "risky"}, sw) ==
        Tokens{"market", "risky"});
  CHECK(remove_stopwords({"The", "market"}, sw, /*fold_case=*/false) ==
        Tokens{"The", "market"});
}

TEST_CASE("porter stemmer canonical pairs") {
  // step 1a
  CHECK(stem("caresses") == "caress");
  CHECK(stem("ponies") == "poni");
  CHECK(stem("ties") == "ti");
  CHECK(stem("caress") == "caress");
  CHECK(stem("cats") == "cat");
  // step 1b
  CHECK(stem("feed") == "feed");
  CHECK(stem("agreed") == "agre");
  CHECK(stem("plastered") == "plaster");
  CHECK(stem("bled") == "bled");
  CHECK(stem("motoring") == "motor");
  CHECK(stem("sing") == "sing");
  CHECK(stem("conflated") == "conflat");
  CHECK(stem("troubled") == "troubl");
  CHECK(stem("sized") == "size");
  CHECK(stem("hopping") == "hop");
  CHECK(stem("tanned") == "tan");
  CHECK(stem("falling") == "fall");
  CHECK(stem("hissing") == "hiss");
  CHECK(stem("fizzed") == "fizz");
  CHECK(stem("failing") == "fail");
  CHECK(stem("filing") == "file");
  // step 1c
  CHECK(stem("happy") == "happi");
  CHECK(stem("sky") == "sky");
  // steps 2-5
  CHECK(stem("relational") == "relat");
  CHECK(stem("conditional") == "condit");
  CHECK(stem("rational") == "ration");
  CHECK(stem("hesitancy") == "hesit");
  CHECK(stem("digitizer") == "digit");
  CHECK(stem("liquidity") == "liquid");
  CHECK(stem("attention") == "attent");
  CHECK(stem("probate") == "probat");
  CHECK(stem("controll") == "control");
  CHECK(stem("roll") == "roll");
}

TEST_CASE("stemmer leaves non-alphabetic tokens alone") {
  CHECK(stem("12.5") == "12.5");
  CHECK(stem("Risk") == "Risk");  // uppercase: untouched by design
  CHECK(stem(",") == ",");
  CHECK(stem("") == "");
  CHECK(stem("at") == "at");  // too short to change
}

TEST_CASE("pipeline reproduces the company-A example") {
  Document doc{"a", "Rising market risk, attention needed on liquidity", {}, {}, {}};
  PreprocessConfig config;  // defaults: lowercase, stopwords, stem
  TokenizedDocument out = preprocess_pipeline(doc, config);
  CHECK(out.doc_id == "a");
  CHECK(out.tokens == Tokens{"rise", "market", "risk", "attent", "need", "liquid"});
}

TEST_CASE("pipeline honours config toggles") {
  Document doc{"d", "The <b>Market</b> risks!", {}, {}, {}};

  PreprocessConfig keep_all;
  keep_all.keep_policy = CharPolicy::keep_all;
  keep_all.stopwords.clear();
  keep_all.stemming = false;
  CHECK(preprocess_pipeline(doc, keep_all).tokens ==
        Tokens{"the", "market", "risks", "!"});

  PreprocessConfig no_lower;
  no_lower.lowercase = false;
  no_lower.stemming = false;
  no_lower.stopwords.clear();
  CHECK(preprocess_pipeline(doc, no_lower).tokens == Tokens{"The", "Market", "risks"});

  PreprocessConfig keep_markup;
  keep_markup.strip_markup = false;
  keep_markup.stemming = false;
  keep_markup.stopwords.clear();
  auto with_markup = preprocess_pipeline(doc, keep_markup).tokens;
  CHECK(std::find(with_markup.begin(), with_markup.end(), "b") != with_markup.end());
}

TEST_CASE("default stopwords include common function words") {
  const auto& sw = default_stopwords();
  CHECK(sw.count("the") == 1);
  CHECK(sw.count("in") == 1);
  CHECK(sw.count("market") == 0);
}

TEST_CASE("stopword and lexicon files load with comments") {
  auto dir = std::filesystem::temp_directory_path() / "riskminer_pp_test";
  std::filesystem::create_directories(dir);
  std::string sw_path = (dir / "sw.txt").string();
  atomic_write_file(sw_path, "# comment\nThe\nis\n\n");
  auto sw = load_stopwords(sw_path);
  CHECK(sw.count("the") == 1);  // folded on load
  CHECK(sw.size() == 2);

  std::string lex_path = (dir / "lex.txt").string();
  atomic_write_file(lex_path, "ab\n# skip\nabc\n");
  CHECK(load_lexicon(lex_path) == Tokens{"ab", "abc"});
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled stopword list matches the built-in defaults") {
  auto sw = load_stopwords(std::string(RISKMINER_DATA_DIR) + "/stopwords_en.txt");
  CHECK(sw == default_stopwords());
}
