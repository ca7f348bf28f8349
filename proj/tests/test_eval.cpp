#include <random>

#include <gtest/gtest.h>

#include "oracles/ami_oracle.hpp"
#include "swiftnorm/error.hpp"
#include "swiftnorm/eval.hpp"

using namespace swiftnorm;

TEST(Contingency, DirectTally) {
  const auto c = contingency({0, 0, 1}, {0, 1, 1});
  EXPECT_EQ(c.n_total, 3u);
  EXPECT_EQ(c.counts.size(), 3u);
  EXPECT_EQ(c.counts.at({0, 0}), 1u);
  EXPECT_EQ(c.counts.at({0, 1}), 1u);
  EXPECT_EQ(c.counts.at({1, 1}), 1u);
}

TEST(Contingency, IdenticalIsDiagonal) {
  const auto c = contingency({3, 1, 3, 2}, {3, 1, 3, 2});
  for (const auto& [key, n] : c.counts) EXPECT_EQ(key.first, key.second);
}

TEST(Contingency, Errors) {
  EXPECT_THROW(contingency({0, 1}, {0}), LengthMismatch);
  EXPECT_THROW(contingency({}, {}), Error);
}

TEST(Ami, PermutedPerfectMatch) { EXPECT_NEAR(ami(contingency({0, 0, 1, 1}, {1, 1, 0, 0})), 1.0, 1e-12); }

TEST(Ami, OneClusterIsZero) {
  EXPECT_NEAR(ami(contingency({0, 0, 1, 1, 2}, {0, 0, 0, 0, 0})), 0.0, 1e-12);
}

TEST(Ami, FourItemCrossMatchesOracle) {
  const std::vector<std::size_t> g{0, 0, 1, 1}, m{0, 1, 0, 1};
  const auto ref = oracle::ami(g, m);
  const auto c = contingency(g, m);
  EXPECT_NEAR(expected_mutual_information(c), static_cast<double>(ref.emi), 1e-12);
  EXPECT_NEAR(ami(c), static_cast<double>(ref.ami), 1e-9);
}

TEST(Ami, RandomPairsMatchOracle) {
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 20;
    const std::size_t kg = 1 + rng() % n, km = 1 + rng() % n;
    std::vector<std::size_t> g(n), m(n);
    for (auto& x : g) x = rng() % kg;
    for (auto& x : m) x = rng() % km;
    const auto c = contingency(g, m);
    const auto ref = oracle::ami(g, m);
    ASSERT_NEAR(mutual_information(c), static_cast<double>(ref.mi), 1e-12);
    ASSERT_NEAR(expected_mutual_information(c), static_cast<double>(ref.emi), 1e-10);
    ASSERT_NEAR(ami(c), static_cast<double>(ref.ami), 1e-9) << "t=" << t;
  }
}

TEST(Ami, SymmetricAndBounded) {
  std::mt19937 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> g(30), m(30);
    for (auto& x : g) x = rng() % 6;
    for (auto& x : m) x = rng() % 4;
    const double ab = ami(contingency(g, m)), ba = ami(contingency(m, g));
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(ab, 1.0 + 1e-12);
  }
}

TEST(Jaccard, IdenticalPartitions) {
  const auto s = jaccard_pr({0, 0, 1, 2}, {5, 5, 6, 7});
  EXPECT_EQ(s.precision_hm, 1.0);
  EXPECT_EQ(s.recall_hm, 1.0);
}

TEST(Jaccard, SingletonsOnPairs) {
  const auto s = jaccard_pr({0, 0, 1, 1}, {0, 1, 2, 3});
  EXPECT_DOUBLE_EQ(s.recall_hm, 0.5);
  EXPECT_EQ(s.precision_hm, 1.0);
}

TEST(Jaccard, OneClusterOnPairs) {
  const auto s = jaccard_pr({0, 0, 1, 1}, {0, 0, 0, 0});
  EXPECT_EQ(s.recall_hm, 1.0);
  EXPECT_DOUBLE_EQ(s.precision_hm, 0.5);
}

TEST(Evaluate, SingletonMachineReport) {
  const auto r = evaluate({0, 0, 1, 1}, {0, 1, 2, 3});
  EXPECT_DOUBLE_EQ(r.recall_hm, 0.5);
  EXPECT_EQ(r.precision_hm, 1.0);
  EXPECT_NEAR(r.ami, 0.0, 1e-12);
  EXPECT_EQ(r.n_clusters_machine, 4u);
  EXPECT_EQ(r.n_clusters_gold, 2u);
}

TEST(Evaluate, PerfectMatch) {
  EXPECT_NEAR(evaluate({4, 4, 2, 9}, {0, 0, 1, 2}).ami, 1.0, 1e-12);
}

TEST(Entropy, UniformAndPoint) {
  EXPECT_NEAR(entropy({1, 1, 1, 1}, 4), std::log(4.0), 1e-12);
  EXPECT_EQ(entropy({5}, 5), 0.0);
}
