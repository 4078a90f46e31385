#include <gtest/gtest.h>

#include "scol/scol.hpp"

using namespace scol;

TEST(Generators, DeterministicFamilies) {
  EXPECT_EQ(gen::star(4).edge_count(), 4U);
  EXPECT_EQ(gen::star(4).degree(0), 4);
  EXPECT_EQ(gen::path(5).edge_count(), 4U);
  EXPECT_EQ(gen::cycle(6).edge_count(), 6U);
  EXPECT_EQ(gen::grid(3, 4).edge_count(), 17U);
  EXPECT_TRUE(gen::grid(3, 4).adjacent(0, 4));
  EXPECT_EQ(gen::complete_bipartite(2, 3).edge_count(), 6U);
  EXPECT_THROW(gen::cycle(2), Error);
  EXPECT_THROW(gen::star(0), Error);
}

TEST(Generators, RandomTriangleFreeRespectsDegree) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = gen::random_triangle_free(30, 4, 60, seed);
    EXPECT_TRUE(is_triangle_free(r.graph));
    EXPECT_LE(r.graph.max_degree(), 4);
    EXPECT_EQ(r.added, r.graph.edge_count());
    EXPECT_LE(r.added, r.requested);
  }
  const auto a = gen::random_triangle_free(20, 3, 25, 7);
  const auto b = gen::random_triangle_free(20, 3, 25, 7);
  EXPECT_TRUE(a.graph == b.graph);
}

TEST(Generators, LargeTriangleFree) {
  const auto r = gen::random_triangle_free(2000, 5, 4000, 3);
  EXPECT_TRUE(is_triangle_free(r.graph));
  EXPECT_LE(r.graph.max_degree(), 5);
  EXPECT_GT(r.added, 3000U);
}

TEST(Generators, RandomBipartite) {
  const auto g = gen::random_bipartite(4, 5, 0.5, 1);
  EXPECT_TRUE(is_triangle_free(g));
  for (auto [u, v] : g.edges()) EXPECT_TRUE(u < 4 && v >= 4);
  EXPECT_EQ(gen::random_bipartite(3, 3, 1.0, 1).edge_count(), 9U);
  EXPECT_EQ(gen::random_bipartite(3, 3, 0.0, 1).edge_count(), 0U);
}

TEST(Generators, ListSizes) {
  const auto g = gen::grid(3, 3);
  const auto lists = gen::random_delta_q_lists(g, 9, 4, 0, 2);
  const ListColoringInstance inst(g, lists, 9);
  EXPECT_TRUE(is_delta_q_instance(inst, 4, 9));
  for (int v = 0; v < g.size(); ++v) EXPECT_EQ(inst.list_size(v), 9 - 4 + g.degree(v));
}

TEST(GeneratorSpec, Parse) {
  const auto s = gen::GeneratorSpec::parse("grid:3x4");
  EXPECT_EQ(s.family, "grid");
  ASSERT_EQ(s.params.size(), 2U);
  EXPECT_EQ(s.build(1).size(), 12);
  EXPECT_EQ(gen::GeneratorSpec::parse("star:3").build(1).size(), 4);
  EXPECT_FALSE(gen::GeneratorSpec::parse("cycle:3").claims_triangle_free());
  std::size_t added = 0;
  gen::GeneratorSpec::parse("random_triangle_free:10,3,12").build(2, &added);
  EXPECT_GT(added, 0U);
  EXPECT_THROW(gen::GeneratorSpec::parse("grid:3xz"), Error);
  EXPECT_THROW(gen::GeneratorSpec::parse("wheel:5").build(1), Error);
  EXPECT_THROW(gen::GeneratorSpec::parse("grid:3").build(1), Error);
}
