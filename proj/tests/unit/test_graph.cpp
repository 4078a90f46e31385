#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "scol/scol.hpp"

using namespace scol;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::BadParams;
}

}  // namespace

TEST(Graph, AdjacencyIsSortedAndSymmetric) {
  const auto g = Graph::from_edges(4, std::vector<Edge>{{2, 0}, {0, 1}, {3, 0}});
  ASSERT_EQ(g.degree(0), 3);
  EXPECT_EQ(std::vector<Vertex>(g.neighbors(0).begin(), g.neighbors(0).end()), (std::vector<Vertex>{1, 2, 3}));
  for (int v = 0; v < 4; ++v)
    for (Vertex w : g.neighbors(v)) EXPECT_TRUE(g.adjacent(w, v));
  EXPECT_EQ(g.edge_count(), 3U);
  EXPECT_EQ(g.max_degree(), 3);
}

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_EQ(code_of([] { Graph::from_edges(2, std::vector<Edge>{{1, 1}}); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { Graph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}}); }), ErrorCode::DuplicateEdge);
  EXPECT_EQ(code_of([] { Graph::from_edges(2, std::vector<Edge>{{0, 2}}); }), ErrorCode::BadVertex);
}

TEST(Instance, ValidatesLists) {
  EXPECT_EQ(code_of([] { build_instance({{0, 1}}, {{1}, {}}, 3); }), ErrorCode::EmptyList);
  EXPECT_EQ(code_of([] { build_instance({{0, 1}}, {{1}, {4}}, 3); }), ErrorCode::ColorOutOfRange);
  const auto inst = build_instance({{0, 1}}, {{3, 1, 3}, {2}}, 3);
  EXPECT_EQ(inst.list_size(0), 2);
  EXPECT_EQ(inst.list(0)[0], 1);
  EXPECT_TRUE(inst.in_list(0, 3));
  EXPECT_FALSE(inst.in_list(1, 1));
}

TEST(Instance, GlauberValidity) {
  EXPECT_TRUE(fixtures::star(3, 5).glauber_valid());
  EXPECT_FALSE(fixtures::star(3, 4).glauber_valid());
  EXPECT_TRUE(fixtures::star(3, 4).degree_plus_one());
}

TEST(Instance, TriangleFreeDetection) {
  EXPECT_FALSE(is_triangle_free(fixtures::triangle(4).graph()));
  EXPECT_TRUE(is_triangle_free(gen::cycle(4)));
  EXPECT_TRUE(is_triangle_free(gen::grid(3, 3)));
  EXPECT_TRUE(is_triangle_free(gen::complete_bipartite(2, 3)));
}

TEST(Instance, DeltaQMembership) {
  EXPECT_TRUE(is_delta_q_instance(fixtures::star(3, 7), 3, 7));
  const auto g = gen::path(3);
  // the middle vertex has degree 2, so it needs q - 3 + 2 = 4 colors
  EXPECT_FALSE(is_delta_q_instance(ListColoringInstance(g, {{1, 2, 3, 4}, {1, 2, 3}, {1, 2, 3}}, 5), 3, 5));
  EXPECT_TRUE(is_delta_q_instance(ListColoringInstance(g, {{1, 2, 3}, {1, 2, 3, 4}, {2, 3, 5}}, 5), 3, 5));
  EXPECT_EQ(code_of([] { is_delta_q_instance(fixtures::star(3, 4), 3, 4); }), ErrorCode::BadParams);
}

TEST(Conditioning, RemovesPinnedColorsFromNeighbors) {
  const auto inst = fixtures::path(3, 3);
  PartialColoring tau;
  tau.assign(1, 2);
  const auto c = condition(inst, tau);
  ASSERT_EQ(c.size(), 2);
  EXPECT_EQ(c.graph().edge_count(), 0U);
  EXPECT_EQ(std::vector<Color>(c.list(0).begin(), c.list(0).end()), (std::vector<Color>{1, 3}));
  EXPECT_EQ(std::vector<Color>(c.list(1).begin(), c.list(1).end()), (std::vector<Color>{1, 3}));
}

TEST(Conditioning, RejectsInvalidPartials) {
  const auto inst = fixtures::path(3, 3);
  EXPECT_EQ(code_of([&] { condition(inst, PartialColoring{{0, 1}, {1, 1}}); }), ErrorCode::NonExtendable);
  EXPECT_EQ(code_of([&] { condition(inst, PartialColoring{{0, 5}}); }), ErrorCode::NonExtendable);
  const auto two = build_instance({{0, 1}}, {{1, 2}, {1}}, 2);
  EXPECT_EQ(code_of([&] { condition(two, PartialColoring{{0, 1}}); }), ErrorCode::NonExtendable);
}

TEST(Conditioning, EmptyPartialIsIdentity) {
  const auto inst = fixtures::star(3, 5);
  const auto c = condition(inst, PartialColoring{});
  EXPECT_EQ(c.lists(), inst.lists());
  EXPECT_TRUE(c.graph() == inst.graph());
}

TEST(Derived, SplitsNeighborsAroundU) {
  // star with center 0 and leaves 1,2,3; split at u = 2 with i = 1, j = 2
  const auto inst = fixtures::star(3, 4);
  const auto d = derive_instance(inst, 0, 2, 1, 2);
  ASSERT_EQ(d.size(), 3);
  EXPECT_EQ(std::vector<Color>(d.list(0).begin(), d.list(0).end()), (std::vector<Color>{2, 3, 4}));  // leaf 1 < u
  EXPECT_EQ(std::vector<Color>(d.list(1).begin(), d.list(1).end()), (std::vector<Color>{1, 2, 3, 4}));  // u
  EXPECT_EQ(std::vector<Color>(d.list(2).begin(), d.list(2).end()), (std::vector<Color>{1, 3, 4}));  // leaf 3 > u
}

TEST(Derived, Errors) {
  const auto inst = fixtures::path(3, 3);
  EXPECT_EQ(code_of([&] { derive_instance(inst, 0, 2, 1, 2); }), ErrorCode::NotNeighbor);
  EXPECT_EQ(code_of([&] { derive_instance(inst, 0, 1, 1, 1); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([&] { derive_instance(inst, 0, 1, 1, 7); }), ErrorCode::ColorNotInList);
  const auto small = build_instance({{0, 1}, {0, 2}}, {{1, 2}, {1, 2}, {2}}, 2);
  EXPECT_EQ(code_of([&] { derive_instance(small, 0, 1, 1, 2); }), ErrorCode::EmptyList);
}

TEST(Derived, CollectionSizeAndDedup) {
  const InstanceCollection single(fixtures::star(3, 4));
  const auto all = derive_collection(single, 0, false);
  EXPECT_EQ(all.size(), 3U * 4U * 3U);
  const auto dedup = derive_collection(single, 0, true);
  EXPECT_LE(dedup.size(), all.size());
  EXPECT_GT(dedup.size(), 0U);
  for (const auto& m : dedup.members()) EXPECT_TRUE(m.graph() == dedup.graph());
  EXPECT_THROW(derive_collection(InstanceCollection(fixtures::star(3, 4)), 7), Error);
  const auto iso = full_palette(Graph(2), 3);
  try {
    derive_collection(InstanceCollection(iso), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IsolatedVertex);
  }
}

TEST(Region, AlphaStarRoot) {
  const double a = alpha_star();
  EXPECT_LE(std::abs(std::exp(1.0 / a) - a), 1e-12);
  EXPECT_GT(a, 1.763);
  EXPECT_LT(a, 1.7633);
  EXPECT_NEAR(a, 1.7632228343518968, 1e-15);
}

TEST(Region, BetaBelowBound) {
  for (double eps : {1e-6, 0.01, 0.1, 0.5, 1.0, 5.0}) EXPECT_LT(region_params(eps).beta, 0.655) << eps;
  EXPECT_THROW(region_params(0.0), Error);
}

TEST(Region, SmallestAdmissibleQAtDegreeThree) {
  EXPECT_EQ(fixtures::min_region_q(0.1, 3), 7);
  EXPECT_EQ(fixtures::min_region_q(0.5, 3), 8);
  EXPECT_EQ(fixtures::min_region_q(1.0, 3), 10);
  EXPECT_EQ(fixtures::min_eigen_q(0.1, 3), 7);
  EXPECT_EQ(fixtures::min_eigen_q(0.5, 3), 9);
  EXPECT_EQ(fixtures::min_eigen_q(1.0, 3), 12);
  EXPECT_TRUE(in_region(3, 7, 0.1));
  EXPECT_FALSE(in_region(3, 6, 0.1));
  EXPECT_FALSE(in_region(2, 100, 0.1));
}

TEST(Region, PhiValues) {
  EXPECT_NEAR(phi(3, 7), 1.6, 1e-14);
  // exact rational power: (q-2)/(Delta-1) * ((m-1)/m)^{m (Delta-1)/(q-2)} with m = 5 at (4, 8)
  EXPECT_NEAR(phi(4, 8), 2.0 * std::pow(4.0 / 5.0, 5.0 / 2.0), 1e-14);
  for (int d = 3; d <= 10; ++d)
    for (int q = d + 1; q < 40; ++q) EXPECT_LT(phi(d, q), phi(d, q + 1)) << d << "," << q;
  EXPECT_THROW(phi(2, 7), Error);
  EXPECT_THROW(phi(5, 5), Error);
  EXPECT_GT(phi(3, 1000), 400.0);
}
