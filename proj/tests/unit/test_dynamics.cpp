#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "scol/scol.hpp"

using namespace scol;

TEST(Rng, SplitMixReferenceValue) {
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, StreamsAreDistinctAndReproducible) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) seen.insert(split_seed(42, i));
  EXPECT_EQ(seen.size(), 100U);
  Xoshiro256 a(7), b(7);
  for (int t = 0; t < 10; ++t) EXPECT_EQ(a(), b());
  Xoshiro256 r(3);
  for (int t = 0; t < 1000; ++t) {
    EXPECT_LT(r.below(5), 5U);
    const double x = r.uniform01();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(InitialState, GreedySmallest) {
  EXPECT_EQ(initial_state(fixtures::path(3, 3)), (std::vector<Color>{1, 2, 1}));
  const auto s = initial_state(fixtures::star(3, 5));
  EXPECT_EQ(s, (std::vector<Color>{1, 2, 2, 2}));
}

TEST(InitialState, AllModesAreProper) {
  const auto inst = fixtures::tight_lists(gen::grid(3, 3), 8, 0, 5);
  for (auto mode : {StartMode::Smallest, StartMode::Largest, StartMode::Random})
    EXPECT_TRUE(is_proper_coloring(inst, initial_state(inst, mode, 11)));
}

TEST(Sampler, StaysProper) {
  const auto inst = fixtures::tight_lists(gen::grid(4, 4), 10, 0, 2);
  const GlauberSampler sampler(inst);
  auto st = sampler.make_state(initial_state(inst));
  Xoshiro256 rng(9);
  for (int k = 0; k < 100; ++k) {
    sampler.run(st, rng, 100);
    ASSERT_TRUE(is_proper_coloring(inst, st.coloring));
  }
}

TEST(Sampler, UpdatePicksFromAvailableColors) {
  // center of a star whose leaves hold 2: the center may pick 1, 3, 4, 5
  const auto inst = fixtures::star(3, 5);
  const GlauberSampler sampler(inst);
  std::set<Color> picked;
  for (int k = 0; k < 4; ++k) {
    auto st = sampler.make_state({1, 2, 2, 2});
    sampler.update(st, 0, (k + 0.5) / 4.0);
    picked.insert(st.coloring[0]);
  }
  EXPECT_EQ(picked, (std::set<Color>{1, 3, 4, 5}));
}

TEST(Trace, ReproducibleAndStrided) {
  TraceConfig cfg;
  cfg.steps = 250;
  cfg.stride = 100;
  cfg.seed = 5;
  cfg.chains = 2;
  const auto inst = fixtures::cycle(6, 5);
  const auto a = run_chain(inst, cfg);
  const auto b = run_chain(inst, cfg);
  ASSERT_EQ(a.chains.size(), 2U);
  ASSERT_EQ(a.chains[0].stats.size(), 4U);  // t = 0, 100, 200, 250
  EXPECT_EQ(a.chains[0].stats.back().t, 250U);
  EXPECT_EQ(a.chains[0].stats[0].hamming, 0);
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_EQ(a.chains[c].final_coloring, b.chains[c].final_coloring);
    EXPECT_EQ(a.chains[c].stream_seed, split_seed(5, c));
    for (const auto& s : a.chains[c].stats) {
      int sum = 0;
      for (int x : s.color_counts) sum += x;
      EXPECT_EQ(sum, 6);
    }
  }
  cfg.stride = 0;
  EXPECT_THROW(run_chain(inst, cfg), Error);
}

TEST(Trace, ThreadCountDoesNotChangeResults) {
  TraceConfig cfg;
  cfg.steps = 500;
  cfg.stride = 50;
  cfg.seed = 3;
  cfg.chains = 4;
  const auto inst = fixtures::path(5, 4);
  const auto a = run_chain(inst, cfg);
  cfg.threads = 3;
  const auto b = run_chain(inst, cfg);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(a.chains[c].final_coloring, b.chains[c].final_coloring);
}

TEST(Tv, ZeroStepsIsPointMass) {
  const auto inst = fixtures::path(3, 3);
  const auto est = estimate_tv(inst, 0, 50, 1);
  EXPECT_EQ(est.states, 12U);
  EXPECT_NEAR(est.tv, 1.0 - 1.0 / 12.0, 1e-12);
  EXPECT_TRUE(est.warning.empty() == inst.glauber_valid());
}

TEST(Tv, NonErgodicWarning) {
  const auto est = estimate_tv(fixtures::triangle(3), 10, 10, 1);
  EXPECT_FALSE(est.ergodic);
  EXPECT_FALSE(est.warning.empty());
}

TEST(Tv, ConvergesOnSmallInstance) {
  const auto est = estimate_tv(fixtures::path(3, 4), 200, 20000, 4);
  EXPECT_LT(est.tv, 0.05);
  EXPECT_GT(est.rms_bound, 0.0);
}

TEST(Coupling, CoalescesOnPath) {
  const auto r = coupling_time(fixtures::path(4, 6), 1, 100000);
  EXPECT_TRUE(r.coalesced);
  EXPECT_GT(r.initial_distance, 0);
  EXPECT_LE(r.steps, r.max_steps);
}

TEST(OracleSample, ProducesProperColorings) {
  const auto inst = fixtures::tight_lists(gen::cycle(5), 6, 0, 1);
  Xoshiro256 rng(4);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(is_proper_coloring(inst, oracle_sample(inst, rng)));
}
