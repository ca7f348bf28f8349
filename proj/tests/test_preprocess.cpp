#include <random>

#include <gtest/gtest.h>

#include "swiftnorm/error.hpp"
#include "swiftnorm/preprocess.hpp"

using namespace swiftnorm;

namespace {

Corpus corpus_of(const std::vector<std::string>& raw) { return build_corpus(parse_plain(raw, "t")); }

}  // namespace

TEST(Clean, DropsAccountNumbers) { EXPECT_EQ(clean("John Smith /12345678 LONDON"), "JOHN SMITH LONDON"); }

TEST(Clean, Punctuation) { EXPECT_EQ(clean("ACME-CORP., LTD. 42"), "ACME CORP LTD"); }

TEST(Clean, DigitsOnly) { EXPECT_EQ(clean("12345"), ""); }

TEST(Clean, NonAsciiIsSeparator) { EXPECT_EQ(clean("M\xC3\xBCLLER GMBH"), "M LLER GMBH"); }

TEST(Clean, Idempotent) {
  std::mt19937 rng(7);
  const std::string alphabet = "abcXYZ 019/-.,\t";
  for (int t = 0; t < 500; ++t) {
    std::string s;
    for (int k = 0; k < 20; ++k) s += alphabet[rng() % alphabet.size()];
    const auto once = clean(s);
    EXPECT_EQ(clean(once), once);
    EXPECT_EQ(once.find("  "), std::string::npos);
  }
}

TEST(Tokenize, Basic) {
  EXPECT_EQ(tokenize("JOHN SMITH LONDON"), (std::vector<std::string>{"JOHN", "SMITH", "LONDON"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("A  B"), (std::vector<std::string>{"A", "B"}));
}

TEST(Canonicalize, SortsAndDeduplicates) {
  EXPECT_EQ(canonicalize({"SMITH", "JOHN", "LONDON"}), "JOHN LONDON SMITH");
  EXPECT_EQ(canonicalize({"LTD", "ACME", "LTD"}), "ACME LTD");
  EXPECT_EQ(canonicalize({"A"}), "A");
  EXPECT_THROW(canonicalize({}), EmptyEntity);
}

TEST(BuildCorpus, TwoLevelDedup) {
  const auto c = corpus_of({"JOHN SMITH 1", "JOHN SMITH 2", "SMITH JOHN"});
  ASSERT_EQ(c.lines.size(), 2u);
  EXPECT_EQ(c.lines[0].text, "JOHN SMITH");
  EXPECT_EQ(c.lines[0].member_record_ids, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.lines[1].text, "SMITH JOHN");
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.forms[0].sorted_text, "JOHN SMITH");
  EXPECT_EQ(c.forms[0].member_line_indices.size(), 2u);
  EXPECT_EQ(c.forms[0].ordered_tokens, (std::vector<std::string>{"JOHN", "SMITH"}));
}

TEST(BuildCorpus, OrderedTokensFromSmallestMemberLine) {
  const auto c = corpus_of({"SMITH JOHN", "JOHN SMITH"});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.forms[0].ordered_tokens, (std::vector<std::string>{"JOHN", "SMITH"}));
}

TEST(BuildCorpus, AllDigits) { EXPECT_THROW(corpus_of({"111", "222"}), EmptyCorpus); }

TEST(BuildCorpus, DroppedRecordsListed) {
  const auto c = corpus_of({"ACME", "999", "BETA"});
  EXPECT_EQ(c.dropped_records, (std::vector<std::size_t>{1}));
}

TEST(BuildCorpus, FormsSortedAndMappingTotal) {
  const auto c = corpus_of({"ZETA CO", "ACME LTD", "LTD ACME", "MID CORP", "ACME  LTD"});
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(c.forms[i - 1].sorted_text, c.forms[i].sorted_text);
  std::size_t members = 0;
  for (std::size_t f = 0; f < c.size(); ++f) {
    for (const auto l : c.forms[f].member_line_indices) EXPECT_EQ(c.lines[l].canonical_index, f);
    members += c.forms[f].member_line_indices.size();
  }
  EXPECT_EQ(members, c.lines.size());
}

TEST(SubsetCorpus, RenumbersLines) {
  const auto c = corpus_of({"B ONE", "A ONE", "ONE A", "C TWO"});
  const auto s = subset_corpus(c, {0, 2});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.forms[0].sorted_text, "A ONE");
  EXPECT_EQ(s.forms[1].sorted_text, "C TWO");
  EXPECT_EQ(s.lines.size(), 3u);
  for (std::size_t f = 0; f < s.size(); ++f) {
    for (const auto l : s.forms[f].member_line_indices) EXPECT_EQ(s.lines.at(l).canonical_index, f);
  }
}
