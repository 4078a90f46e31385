#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "naive_oracle.hpp"
#include "scol/scol.hpp"

using namespace scol;

TEST(PairWalk, TransitionIsConditionalOverNMinusOne) {
  const auto inst = fixtures::path(3, 4);
  const auto ref = naive::enumerate(inst);
  const auto w = build_pairwise_walk(inst);
  for (std::size_t a = 0; a < w.index.size(); ++a) {
    const auto [v, i] = w.index.pair(a);
    double row = 0.0;
    for (std::size_t b = 0; b < w.index.size(); ++b) {
      const auto [u, k] = w.index.pair(b);
      const double p = w.transition(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      row += p;
      EXPECT_NEAR(p, u == v ? 0.0 : ref.cond(v, i, u, k) / 2.0, 1e-15);
    }
    EXPECT_NEAR(row, 1.0, 1e-14);
  }
  EXPECT_LE(reversibility_residual(w), 1e-15);
}

TEST(PairWalk, SingleEdgeSpectrum) {
  // two vertices with {1,2,3}: from (0,i) the walk goes to (1,k), k != i, with probability 1/2
  const auto w = build_pairwise_walk(fixtures::path(2, 3));
  const auto ev = walk_spectrum(w);
  ASSERT_EQ(ev.size(), 6);
  EXPECT_NEAR(ev(5), 1.0, 1e-12);
  EXPECT_NEAR(ev(4), 0.5, 1e-12);
  EXPECT_NEAR(ev(0), -1.0, 1e-12);
  EXPECT_NEAR(second_eigenvalue_walk(w), 0.5, 1e-12);
}

TEST(PairWalk, RejectsSingleVertex) { EXPECT_THROW(build_pairwise_walk(fixtures::path(1, 3)), Error); }

TEST(WalkIdentity, HoldsOnSmallInstances) {
  for (const auto& inst : {fixtures::cycle(4, 5), fixtures::star(4, 7), fixtures::path(4, 4), fixtures::grid(2, 3, 5)}) {
    const auto r = verify_theorem8(inst);
    EXPECT_TRUE(r.pass) << r.identity_residual;
    EXPECT_LE(r.identity_residual, 1e-8);
    EXPECT_LE(r.null_residual_ones, 1e-12);
    EXPECT_LE(r.null_residual_vertex, 1e-12);
    EXPECT_GE(r.minus_multiplicity, r.n - 1);
  }
}

TEST(WalkIdentity, HoldsOnRandomLists) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = gen::random_triangle_free(6, 3, 7, seed).graph;
    const auto r = verify_theorem8(fixtures::tight_lists(g, 7, 1, seed));
    EXPECT_TRUE(r.pass) << seed << " " << r.identity_residual;
  }
}

TEST(WalkIdentity, EdgelessGraph) {
  const auto r = verify_theorem8(full_palette(Graph(3), 3));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lambda1_m, 0.0, 1e-12);
  EXPECT_NEAR(r.lambda2_walk, 0.0, 1e-12);
}

TEST(WalkIdentity, RequiresGlauberValidLists) {
  try {
    verify_theorem8(fixtures::star(3, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
  }
}

TEST(TopEigenvalue, PowerIterationAgrees) {
  const auto m = influence_matrix(fixtures::cycle(5, 5));
  const auto top = top_eigenvalue_influence(m);
  const auto pw = power_iteration_lambda1(m.entries);
  EXPECT_TRUE(pw.converged);
  EXPECT_NEAR(pw.value, top.lambda1, 1e-7);
  EXPECT_LE(top.max_imag, 1e-8);
}

TEST(TopEigenvalue, KnownMatrix) {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  EXPECT_NEAR(top_eigenvalue_influence(a).lambda1, 3.0, 1e-12);
  EXPECT_NEAR(power_iteration_lambda1(a).value, 3.0, 1e-9);
}

TEST(Conductance, SingleEdge) {
  const auto w = build_pairwise_walk(fixtures::path(2, 3));
  const double phi = walk_conductance(w);
  EXPECT_GT(phi, 0.0);
  EXPECT_LE(phi, 1.0);
}

TEST(Sweep, LastRowIsSingleEdgesOrPairs) {
  SweepOptions o;
  o.epsilon = 0.5;
  o.delta = 3;
  const auto inst = fixtures::star(3, 8);
  const auto rep = local_expansion_sweep(inst, o);
  ASSERT_EQ(rep.rows.size(), 3U);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.certification, "exhaustive");
  EXPECT_EQ(rep.rows[0].evaluated, 1U);
  // s = n - 2 leaves two free vertices; every extendable pinning is evaluated
  EXPECT_GT(rep.rows[2].evaluated, 0U);
  EXPECT_NEAR(rep.rows[0].worst_lambda2, verify_theorem8(inst).lambda2_walk, 1e-12);
  EXPECT_TRUE(rep.all_within_bound);
  EXPECT_NEAR(rep.c_bound, 64.0 * 9.0 * 3.0 / 8.0, 1e-12);
  EXPECT_LE(rep.gap_lower_bound, 1.0 / 4.0);
}

TEST(Sweep, GapLowerBoundBelowExactGap) {
  SweepOptions o;
  o.delta = 3;
  for (const auto& inst : {fixtures::path(3, 5), fixtures::star(3, 7), fixtures::cycle(4, 5)}) {
    const auto rep = local_expansion_sweep(inst, o);
    ASSERT_TRUE(rep.exhaustive);
    const auto gap = spectral_gap(glauber_matrix(inst));
    EXPECT_LE(rep.gap_lower_bound, gap.gap + 1e-9);
  }
}

TEST(Sweep, SampledWhenOverBudget) {
  SweepOptions o;
  o.delta = 3;
  o.budget = 5;
  const auto rep = local_expansion_sweep(fixtures::path(4, 5), o);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_EQ(rep.certification, "sampled, not certified");
}

TEST(MixingBound, Constants) {
  const auto b = mixing_bound_theorem1(100, 3, 12, 1.0);
  const double alpha = 2.0 * alpha_star();
  EXPECT_NEAR(b.alpha, alpha, 1e-15);
  EXPECT_NEAR(b.c_alpha, 64.0 / alpha * 4.0, 1e-12);
  EXPECT_NEAR(b.exponent, 80.0 * b.c_alpha * b.c_alpha, 1e-9);
  EXPECT_NEAR(b.c_bound, 64.0 * 4.0 * 3.0 / 12.0, 1e-12);
  EXPECT_EQ(b.k0, 128);
  EXPECT_NEAR(b.log_bound, b.exponent * std::log(100.0), 1e-6);
  EXPECT_FALSE(b.alpha_below_two);
  EXPECT_THROW(mixing_bound_theorem1(100, 3, 11, 1.0), Error);
}

TEST(MixingBound, ProductWithinCap) {
  for (double eps : {0.1, 0.5, 1.0})
    for (int delta : {3, 5, 10}) {
      const int q = static_cast<int>(std::ceil(region_params(eps).alpha * delta + 1.0));
      for (int n : {10, 100, 1000}) {
        const auto b = mixing_bound_theorem1(n, delta, q, eps);
        EXPECT_LE(b.log_product_formula, b.log_product_cap + 1e-9) << eps << " " << delta << " " << n;
        EXPECT_LE(b.log_mixing_formula, b.log_bound + 1e-9);
      }
    }
}
