#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "oracles/ro_oracle.hpp"
#include "swiftnorm/error.hpp"
#include "swiftnorm/preprocess.hpp"
#include "swiftnorm/similarity.hpp"

using namespace swiftnorm;

TEST(RatcliffObershelp, Basics) {
  EXPECT_EQ(ratcliff_obershelp("ABC", "ABC"), 1.0);
  EXPECT_EQ(ratcliff_obershelp("ABC", "XYZ"), 0.0);
  EXPECT_EQ(ratcliff_obershelp("ABCD", "BCDE"), 0.75);
  EXPECT_EQ(ratcliff_obershelp("", ""), 1.0);
  EXPECT_EQ(ratcliff_obershelp("A", ""), 0.0);
}

// Values produced by Python's difflib.SequenceMatcher(None, a, b, autojunk=False).
TEST(RatcliffObershelp, MatchesDifflib) {
  struct Case {
    const char* a;
    const char* b;
    std::size_t matches;
  };
  const Case cases[] = {
      {"ACME LTD", "ACME LONDON LTD", 8},
      {"ALPHA", "GAMMA", 2},
      {"BETA", "DELTA", 3},
      {"MR", "MRS", 2},
      {"JOHN SMITH LONDON", "JOHN SMYTH LONDON", 16},
      {"ACME TRADING LIMITED HIGH STREET LONDON", "ACME TRADNG LTD HIGH STRET LONDON UK", 33},
      {"ABABABAB", "BABABA", 6},
      {"KITTEN SITTING", "SITTING KITTEN", 7},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(matching_characters(c.a, c.b), c.matches) << c.a << " / " << c.b;
  }
  EXPECT_DOUBLE_EQ(ratcliff_obershelp("ACME LTD", "ACME LONDON LTD"), 16.0 / 23.0);
}

TEST(RatcliffObershelp, LongRepetitiveStrings) {
  const std::string a(208, 'A');
  const std::string b = std::string(209, 'A') + "B";
  EXPECT_EQ(matching_characters(a, b), 208u);
}

TEST(RatcliffObershelp, RandomStringsAgainstOracle) {
  std::mt19937 rng(11);
  for (int t = 0; t < 2000; ++t) {
    std::string a, b;
    const auto la = rng() % 15, lb = rng() % 15;
    for (unsigned i = 0; i < la; ++i) a += static_cast<char>('A' + rng() % 4);
    for (unsigned i = 0; i < lb; ++i) b += static_cast<char>('A' + rng() % 4);
    ASSERT_EQ(ratcliff_obershelp(a, b), oracle::ratio(a, b)) << a << " / " << b;
    ASSERT_GE(ratcliff_obershelp(a, b), 0.0);
    ASSERT_LE(ratcliff_obershelp(a, b), 1.0);
  }
}

TEST(RatcliffObershelp, ArgumentOrderMatters) {
  // Block choice depends on which string is scanned first.
  const std::string a = "ACME LONDON LTD", b = "ALPHA LONDON";
  EXPECT_EQ(ratcliff_obershelp(a, b), oracle::ratio(a, b));
  EXPECT_EQ(ratcliff_obershelp(b, a), oracle::ratio(b, a));
}

TEST(RatcliffObershelp, SymmetricOnSpecExamples) {
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{{"ABCD", "BCDE"}, {"MR", "MRS"}}) {
    EXPECT_EQ(ratcliff_obershelp(a, b), ratcliff_obershelp(b, a));
  }
}

namespace {

Corpus small_corpus() {
  return build_corpus(parse_plain({"ACME LTD", "ACME LTD LONDON", "JOHN SMITH", "SMYTH JOHN", "ZETA"}, "t"));
}

}  // namespace

TEST(SimilarityMatrix, DiagonalSymmetryAndValues) {
  const auto c = small_corpus();
  const Matrix s = similarity_matrix(c, 1);
  ASSERT_EQ(s.rows(), static_cast<Eigen::Index>(c.size()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    EXPECT_EQ(s(i, i), 1.0);
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      EXPECT_EQ(s(i, j), s(j, i));
      // The ratio is not symmetric in its arguments; the pair is evaluated once
      // with the lower form index first.
      const auto lo = std::min(i, j), hi = std::max(i, j);
      if (lo != hi) EXPECT_EQ(s(i, j), oracle::ratio(c.forms[lo].sorted_text, c.forms[hi].sorted_text));
    }
  }
  // "ACME LONDON LTD" sorts before "ACME LTD".
  EXPECT_NEAR(s(0, 1), 2.0 * 8.0 / 23.0, 1e-12);
}

TEST(SimilarityMatrix, IndependentOfThreads) {
  std::vector<std::string> raw;
  std::mt19937 rng(3);
  for (int i = 0; i < 120; ++i) {
    std::string s;
    for (int w = 0; w < 3; ++w) {
      for (int k = 0; k < 4; ++k) s += static_cast<char>('A' + rng() % 6);
      s += ' ';
    }
    raw.push_back(s);
  }
  const auto c = build_corpus(parse_plain(raw, "t"));
  const Matrix one = similarity_matrix(c, 1);
  const Matrix many = similarity_matrix(c, 8);
  EXPECT_TRUE(one == many);
}

TEST(SimilarityCache, RoundTripAndValidation) {
  const auto c = small_corpus();
  const Matrix s = similarity_matrix(c, 1);
  const auto dir = std::filesystem::temp_directory_path() / "swiftnorm_cache_test";
  std::filesystem::create_directories(dir);
  const auto path = similarity_cache_path(dir, c);
  EXPECT_FALSE(read_similarity_cache(dir / "absent.bin").has_value());
  write_similarity_cache(path, s);
  const auto back = read_similarity_cache(path);
  ASSERT_TRUE(back.has_value());
  EXPECT_TRUE(*back == s);

  std::ofstream(path, std::ios::binary | std::ios::trunc) << "NOTACACHE";
  EXPECT_THROW(read_similarity_cache(path), Error);
  std::filesystem::remove_all(dir);
}

TEST(SimilarityCache, FingerprintTracksForms) {
  const auto a = small_corpus();
  const auto b = build_corpus(parse_plain({"ACME LTD", "ZETA"}, "t"));
  EXPECT_EQ(corpus_fingerprint(a), corpus_fingerprint(small_corpus()));
  EXPECT_NE(corpus_fingerprint(a), corpus_fingerprint(b));
  EXPECT_EQ(corpus_fingerprint(a).size(), 16u);
}
