#include <random>

#include <gtest/gtest.h>

#include "oracles/lsa_oracle.hpp"
#include "swiftnorm/error.hpp"
#include "swiftnorm/lsa.hpp"

using namespace swiftnorm;

namespace {

Matrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index rank) {
  std::normal_distribution<double> n;
  Matrix l(rows, rank), r(rank, cols);
  for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = n(rng);
  return l * r;
}

}  // namespace

TEST(Lsa, RankOneMatrix) {
  const Matrix x = Eigen::VectorXd::LinSpaced(4, 1, 4) * Eigen::RowVectorXd::LinSpaced(3, 1, 3);
  const auto f = lsa_project(make_family("tfidf", x), ComponentCount{1});
  ASSERT_TRUE(f.explained_variance.has_value());
  ASSERT_EQ(f.explained_variance->size(), 1u);
  EXPECT_NEAR((*f.explained_variance)[0], 1.0, 1e-12);
  EXPECT_EQ(f.cols(), 1u);
}

TEST(Lsa, IdentityTwoComponents) {
  const auto f = lsa_project(make_family("onehot", Matrix::Identity(3, 3)), ComponentCount{2});
  ASSERT_EQ(f.explained_variance->size(), 2u);
  EXPECT_NEAR(f.explained_variance->back(), 2.0 / 3.0, 1e-12);
}

TEST(Lsa, InvalidSelectors) {
  const auto m = make_family("tfidf", Matrix::Identity(3, 4));
  EXPECT_THROW(lsa_project(m, ComponentCount{0}), InvalidSelector);
  EXPECT_THROW(lsa_project(m, ComponentCount{4}), InvalidSelector);
  EXPECT_THROW(lsa_project(m, VarianceTarget{0.0}), InvalidSelector);
  EXPECT_THROW(lsa_project(m, VarianceTarget{1.5}), InvalidSelector);
}

TEST(Lsa, SpectrumMatchesDenseSvd) {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index rows = 1 + static_cast<Eigen::Index>(rng() % 50);
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(rng() % 50);
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng() % std::min(rows, cols));
    const Matrix x = random_matrix(rng, rows, cols, rank);
    const auto ref = oracle::spectrum(x);
    const auto d = decompose(x);
    const auto cum = d.cumulative_explained_variance();
    EXPECT_EQ(d.rank, static_cast<std::size_t>(rank));
    for (std::size_t k = 0; k < cum.size(); ++k) {
      EXPECT_NEAR(cum[k], ref.cumulative[k], 1e-9) << "t=" << t << " k=" << k;
      if (k > 0) EXPECT_GE(cum[k], cum[k - 1]);
    }
    EXPECT_NEAR(cum.back(), 1.0, 1e-9);
    // Projections agree with U * Sigma up to the sign of each column.
    for (std::size_t k = 0; k < d.rank; ++k) {
      const auto ours = d.projections.col(static_cast<Eigen::Index>(k));
      const auto theirs = ref.projections.col(static_cast<Eigen::Index>(k));
      const double same = (ours - theirs).norm(), flipped = (ours + theirs).norm();
      EXPECT_LT(std::min(same, flipped), 1e-6 * std::max(1.0, theirs.norm()));
    }
  }
}

TEST(Lsa, VarianceSelectionIsMinimal) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index rows = 2 + static_cast<Eigen::Index>(rng() % 49);
    const Eigen::Index cols = 2 + static_cast<Eigen::Index>(rng() % 49);
    const Matrix x = random_matrix(rng, rows, cols, std::min(rows, cols));
    const auto ref = oracle::spectrum(x);
    const auto d = decompose(x);
    const double target = u(rng);
    const std::size_t k = resolve_selector(d, VarianceTarget{target});
    EXPECT_EQ(k, oracle::minimal_k(ref.cumulative, target)) << "t=" << t;
    const auto f = lsa_project(d, VarianceTarget{target});
    EXPECT_GE(f.explained_variance->back(), target - 1e-12);
  }
}

TEST(Lsa, FullVarianceReachesRank) {
  std::mt19937 rng(13);
  const Matrix x = random_matrix(rng, 20, 30, 7);
  const auto d = decompose(x);
  EXPECT_EQ(resolve_selector(d, VarianceTarget{1.0}), 7u);
}

TEST(Lsa, SelectComponentCount) {
  const std::vector<double> cum{0.5, 0.8, 0.9, 1.0};
  EXPECT_EQ(select_component_count(cum, 0.5), 1u);
  EXPECT_EQ(select_component_count(cum, 0.85), 3u);
  EXPECT_EQ(select_component_count(cum, 0.9), 3u);
  EXPECT_EQ(select_component_count(cum, 1.0), 4u);
}

TEST(Lsa, ZeroMatrix) {
  const auto d = decompose(Matrix::Zero(4, 3));
  EXPECT_EQ(d.rank, 0u);
}
