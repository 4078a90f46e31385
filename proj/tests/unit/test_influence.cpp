#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "naive_oracle.hpp"
#include "scol/scol.hpp"

using namespace scol;

class StarClosedForms : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(StarClosedForms, CenterToLeaf) {
  const auto [delta, q] = GetParam();
  const Distribution d(fixtures::star(delta, q));
  const auto m = influence_matrix(d);
  const auto src = source_influence(d, 0, q);
  const double qq = q;
  for (int leaf = 1; leaf <= delta; ++leaf) {
    for (Color k = 1; k <= q; ++k) {
      EXPECT_NEAR(src.max(leaf, k), 1.0 / (qq - 1.0), 1e-12);
      EXPECT_NEAR(src.biased(leaf, k), 0.0, 1e-12);
      EXPECT_NEAR(src.jhat(leaf, k), 1.0 / (qq * (qq - 1.0)), 1e-12);
      for (Color i = 1; i <= q; ++i)
        EXPECT_NEAR(m.at(0, i, leaf, k), i == k ? -1.0 / qq : 1.0 / (qq * (qq - 1.0)), 1e-12);
    }
  }
  for (Color i = 1; i <= q; ++i) EXPECT_NEAR(row_abs_sum(m, 0, i), 2.0 * delta / qq, 1e-12);
  EXPECT_NEAR(src.sum_max(0), qq * delta / (qq - 1.0), 1e-12);
  EXPECT_NEAR(total_influence(d, 0), qq / (qq - 1.0), 1e-12);
  EXPECT_NEAR(total_biased_influence(d, 0), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Small, StarClosedForms,
                         ::testing::Values(std::pair{3, 5}, std::pair{3, 7}, std::pair{4, 6}, std::pair{5, 8}));

TEST(Influence, MatrixMatchesProductEnumeration) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto g = gen::random_triangle_free(6, 3, 7, seed).graph;
    const auto inst = fixtures::tight_lists(g, 6, 0, seed);
    const auto ref = naive::enumerate(inst);
    const auto m = influence_matrix(inst);
    for (std::size_t a = 0; a < m.index.size(); ++a) {
      const auto [v, i] = m.index.pair(a);
      for (std::size_t b = 0; b < m.index.size(); ++b) {
        const auto [w, k] = m.index.pair(b);
        const double expect = v == w ? 0.0 : ref.m(v, i, w, k);
        EXPECT_NEAR(m.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), expect, 1e-14);
      }
    }
  }
}

TEST(Influence, MaximumInfluenceFromConditionals) {
  const auto inst = fixtures::tight_lists(gen::path(4), 5, 1, 3);
  const auto ref = naive::enumerate(inst);
  const Distribution d(inst);
  for (int v = 0; v < 4; ++v)
    for (int w = 0; w < 4; ++w) {
      if (w == v) continue;
      for (Color k : inst.list(w)) {
        double lo = 1e9, hi = -1e9;
        for (Color i : inst.list(v)) {
          lo = std::min(lo, ref.cond(v, i, w, k));
          hi = std::max(hi, ref.cond(v, i, w, k));
        }
        EXPECT_NEAR(max_influence(d, v, w, k), hi - lo, 1e-14);
      }
    }
}

TEST(Influence, BiasedNeverExceedsMaximum) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto g = gen::random_bipartite(3, 3, 0.6, seed);
    const Distribution d(fixtures::tight_lists(g, 6, 1, seed));
    for (int v = 0; v < d.size(); ++v) {
      const auto s = source_influence(d, v, 6);
      for (int w = 0; w < d.size(); ++w)
        for (Color k = 1; k <= 6; ++k) {
          EXPECT_LE(s.biased(w, k), s.max(w, k) + 1e-15);
          EXPECT_GE(s.biased(w, k), 0.0);
        }
      EXPECT_LE(total_biased_influence(d, v), total_influence(d, v) + 1e-15);
    }
  }
}

TEST(Influence, SelfInfluenceIsIndicator) {
  const Distribution d(fixtures::path(3, 4));
  const auto s = source_influence(d, 1, 4);
  for (Color k = 1; k <= 4; ++k) {
    EXPECT_EQ(s.max(1, k), 1.0);
    EXPECT_EQ(s.biased(1, k), 0.0);
  }
}

TEST(Influence, IsolatedSourceHasZeroTotal) {
  const Distribution d(build_instance({{1, 2}}, {{1, 2}, {1, 2, 3}, {1, 2, 3}}, 3));
  EXPECT_EQ(total_influence(d, 0), 0.0);
  EXPECT_EQ(total_biased_influence(d, 0), 0.0);
  EXPECT_NEAR(max_influence(d, 0, 1, 1), 0.0, 1e-15);
}

TEST(Influence, OutsideListIsZero) {
  const Distribution d(build_instance({{0, 1}}, {{1, 2, 3}, {1, 2}}, 3));
  EXPECT_EQ(max_influence(d, 0, 1, 3), 0.0);
  EXPECT_EQ(biased_influence(d, 0, 1, 3), 0.0);
  const auto m = influence_matrix(d);
  EXPECT_EQ(m.at(0, 1, 1, 3), 0.0);
}

TEST(Influence, CollectionTakesMaxima) {
  const auto g = gen::path(2);
  InstanceCollection coll(g);
  coll.add(build_instance({{0, 1}}, {{1, 2, 3}, {1, 2, 3}}, 3));
  coll.add(build_instance({{0, 1}}, {{1, 2}, {1, 2, 3}}, 3));
  const auto dists = analyze_collection(coll);
  for (Color k = 1; k <= 3; ++k) {
    const double expect = std::max(max_influence(dists[0], 0, 1, k), max_influence(dists[1], 0, 1, k));
    EXPECT_EQ(max_influence(dists, 0, 1, k), expect);
  }
  EXPECT_GE(total_influence(dists, 0), total_influence(dists[0], 0));
}

TEST(Influence, RowSumsOfEachTargetBlockVanish) {
  const Distribution d(fixtures::tight_lists(gen::cycle(5), 6, 1, 9));
  const auto m = influence_matrix(d);
  for (std::size_t a = 0; a < m.index.size(); ++a) {
    const auto [v, i] = m.index.pair(a);
    for (int w = 0; w < d.size(); ++w) {
      if (w == v) continue;
      double s = 0.0;
      for (Color k : d.instance().list(w)) s += m.at(v, i, w, k);
      EXPECT_NEAR(s, 0.0, 1e-14);
    }
  }
}
