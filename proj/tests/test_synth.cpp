#include <map>
#include <set>

#include <gtest/gtest.h>

#include "swiftnorm/error.hpp"
#include "swiftnorm/preprocess.hpp"
#include "swiftnorm/similarity.hpp"
#include "swiftnorm/synth.hpp"

using namespace swiftnorm;

namespace {

SynthConfig small(std::uint64_t seed = 42) {
  SynthConfig c;
  c.seed = seed;
  c.n_entities = 200;
  return c;
}

}  // namespace

TEST(Synth, SameSeedSameOutput) {
  const auto a = generate(small());
  const auto b = generate(small());
  EXPECT_EQ(a.raw_lines(), b.raw_lines());
  ASSERT_EQ(a.gold.size(), b.gold.size());
  for (std::size_t i = 0; i < a.gold.size(); ++i) {
    EXPECT_EQ(a.gold[i].unique_line_text, b.gold[i].unique_line_text);
    EXPECT_EQ(a.gold[i].gold_id, b.gold[i].gold_id);
  }
}

TEST(Synth, SeedChangesOutput) { EXPECT_NE(generate(small(1)).raw_lines(), generate(small(2)).raw_lines()); }

TEST(Synth, EveryCleanedLineHasOneGoldId) {
  const auto s = generate(small());
  std::map<std::string, std::size_t> gold;
  for (const auto& g : s.gold) EXPECT_TRUE(gold.emplace(g.unique_line_text, g.gold_id).second);
  for (const auto& v : s.values) EXPECT_EQ(gold.at(clean(v.raw_text)), v.gold_id);
}

TEST(Synth, GoldClusterCountMatchesEmittedIds) {
  auto cfg = small();
  cfg.shared_name_rate = 0.3;
  const auto s = generate(cfg);
  std::set<std::size_t> ids;
  for (const auto& g : s.gold) ids.insert(g.gold_id);
  EXPECT_EQ(s.n_gold_clusters, ids.size());
}

TEST(Synth, AccountPrefixOnlyCollapsesToOneLinePerEntity) {
  auto cfg = small();
  cfg.typo_rate = 0.0;
  cfg.operators = {VariationOperator::account_prefix};
  cfg.account_prefix_rate = 1.0;
  const auto s = generate(cfg);
  EXPECT_EQ(s.gold.size(), cfg.n_entities);
  EXPECT_EQ(s.n_gold_clusters, cfg.n_entities);
  const auto corpus = build_corpus(parse_plain(s.raw_lines(), "synth"));
  EXPECT_EQ(corpus.size(), cfg.n_entities);
}

TEST(Synth, ScaleMatchesVariationHistogram) {
  SynthConfig cfg;
  const auto s = generate(cfg);
  EXPECT_EQ(s.n_gold_clusters, 1000u);
  EXPECT_GT(s.values.size(), 2200u);
  EXPECT_LT(s.values.size(), 2900u);
}

TEST(Synth, NamesAreWellSeparated) {
  auto cfg = small();
  cfg.operators.clear();
  const auto s = generate(cfg);
  // With every operator off, distinct entities never pass the 0.75 name gate.
  std::vector<std::string> first;
  for (const auto& g : s.gold) first.push_back(tokenize(g.unique_line_text).front());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = i + 1; j < first.size(); ++j) EXPECT_LT(ratcliff_obershelp(first[i], first[j]), 0.75);
  }
}

TEST(Synth, MoreTyposNeverFewerVariants) {
  std::size_t previous = 0;
  for (const double rate : {0.0, 0.05, 0.2, 0.5}) {
    auto cfg = small();
    cfg.operators = {VariationOperator::typo};
    cfg.typo_rate = rate;
    const auto lines = generate(cfg).gold.size();
    EXPECT_GE(lines, previous) << rate;
    previous = lines;
  }
}

TEST(Synth, ValidateRejectsBadConfig) {
  auto cfg = small();
  cfg.typo_rate = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
  cfg = small();
  cfg.variation_weights = {0, 0, 0, 0, 0, 0};
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
  cfg = small();
  cfg.n_entities = 0;
  EXPECT_THROW(cfg.validate(), ConfigInvalid);
}

TEST(Synth, OperatorNames) {
  for (const auto op : all_operators()) EXPECT_EQ(parse_operator(to_string(op)), op);
  EXPECT_THROW(parse_operator("nope"), ConfigInvalid);
}
