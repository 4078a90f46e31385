#ifndef SCOL_DYNAMICS_HPP
#define SCOL_DYNAMICS_HPP

// Simulated Glauber dynamics: single-chain stepping, traces, fixed-start
// total variation estimates and a coupling diagnostic.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "scol/color_mask.hpp"
#include "scol/glauber.hpp"
#include "scol/graph.hpp"
#include "scol/oracle.hpp"
#include "scol/parallel.hpp"
#include "scol/rng.hpp"

namespace scol {

struct ChainState {
  std::vector<Color> coloring;
  // Scratch for palettes above 128 colors: stamp[c] == epoch marks c as used.
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;
};

inline bool is_proper_coloring(const ListColoringInstance& inst, std::span<const Color> coloring) {
  if (static_cast<int>(coloring.size()) != inst.size()) return false;
  for (int v = 0; v < inst.size(); ++v) {
    if (!inst.in_list(v, coloring[v])) return false;
    for (Vertex w : inst.graph().neighbors(v))
      if (coloring[w] == coloring[v]) return false;
  }
  return true;
}

class GlauberSampler {
 public:
  explicit GlauberSampler(const ListColoringInstance& inst) : inst_(inst) {
    const int n = inst.size();
    int top = 0;
    for (int v = 0; v < n; ++v) top = std::max(top, inst.list(v).back());
    masks_path_ = top <= ColorMask::kMaxColor;
    if (masks_path_) {
      masks_.resize(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) masks_[v] = inst.mask(v);
    }
    max_color_ = top;
  }

  const ListColoringInstance& instance() const { return inst_; }
  bool uses_masks() const { return masks_path_; }

  ChainState make_state(std::vector<Color> coloring) const {
    ChainState s;
    s.coloring = std::move(coloring);
    if (!masks_path_) s.stamp.assign(static_cast<std::size_t>(max_color_) + 1, 0);
    return s;
  }

  /// Resample v: the k-th smallest available color with k = floor(u * m).
  void update(ChainState& s, Vertex v, double u) const {
    auto nb = inst_.graph().neighbors(v);
    Color* col = s.coloring.data();
    if (masks_path_) {
      ColorMask occ;
      for (Vertex w : nb) occ.set(col[w]);
      const ColorMask avail = masks_[v].without(occ);
      const int m = avail.count();
      const int k = std::min(static_cast<int>(u * m), m - 1);
      col[v] = avail.nth(k);
    } else {
      if (++s.epoch == 0) {
        std::fill(s.stamp.begin(), s.stamp.end(), 0);
        s.epoch = 1;
      }
      for (Vertex w : nb) s.stamp[col[w]] = s.epoch;
      auto l = inst_.list(v);
      int m = 0;
      for (Color c : l) m += s.stamp[c] != s.epoch;
      int k = std::min(static_cast<int>(u * m), m - 1);
      for (Color c : l) {
        if (s.stamp[c] == s.epoch) continue;
        if (k-- == 0) {
          col[v] = c;
          break;
        }
      }
    }
    assert(is_locally_proper(s, v));
  }

  void step(ChainState& s, Xoshiro256& rng) const {
    const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(inst_.size())));
    update(s, v, rng.uniform01());
  }

  void run(ChainState& s, Xoshiro256& rng, std::uint64_t steps) const {
    if (inst_.size() == 0) return;
    for (std::uint64_t t = 0; t < steps; ++t) step(s, rng);
  }

 private:
  bool is_locally_proper(const ChainState& s, Vertex v) const {
    for (Vertex w : inst_.graph().neighbors(v))
      if (s.coloring[w] == s.coloring[v]) return false;
    return inst_.in_list(v, s.coloring[v]);
  }

  const ListColoringInstance& inst_;
  bool masks_path_ = true;
  int max_color_ = 0;
  std::vector<ColorMask> masks_;
};

/// Glauber stepping as a free function.
inline void glauber_step(ChainState& s, const GlauberSampler& sampler, Xoshiro256& rng) { sampler.step(s, rng); }

enum class StartMode { Smallest, Largest, Random };

/// Exact uniform sample by sequential conditioning on oracle marginals.
inline std::vector<Color> oracle_sample(const ListColoringInstance& inst, Xoshiro256& rng,
                                        const OracleOptions& opts = {}) {
  const int n = inst.size();
  std::vector<Color> out(static_cast<std::size_t>(n), 0);
  PartialColoring tau;
  for (int v = 0; v < n; ++v) {
    const auto cond = condition(inst, tau);
    // vertices 0..v-1 are fixed, so v is vertex 0 of the conditioned instance
    const auto counts = count_colorings(cond, opts);
    const PairIndex idx(cond);
    std::uint64_t r = rng.below(counts.total);
    for (Color c : cond.list(0)) {
      const std::uint64_t k = counts.per_pair[idx.at(0, c)];
      if (r < k) {
        out[v] = c;
        break;
      }
      r -= k;
    }
    tau.assign(v, out[v]);
  }
  return out;
}

/// Greedy proper coloring in vertex order. Falls back to an oracle sample
/// when greedy gets stuck and the instance is small enough to enumerate.
inline std::vector<Color> initial_state(const ListColoringInstance& inst, StartMode mode = StartMode::Smallest,
                                        std::uint64_t seed = 0) {
  const int n = inst.size();
  const Graph& g = inst.graph();
  std::vector<Color> col(static_cast<std::size_t>(n), 0);
  Xoshiro256 rng(seed);
  for (int v = 0; v < n; ++v) {
    std::vector<Color> avail;
    for (Color c : inst.list(v)) {
      bool used = false;
      for (Vertex w : g.neighbors(v))
        if (w < v && col[w] == c) {
          used = true;
          break;
        }
      if (!used) avail.push_back(c);
    }
    if (avail.empty()) {
      if (enumeration_size_bound(inst) <= 1e8) {
        Xoshiro256 fallback(split_seed(seed, 0xfa11bac));
        return oracle_sample(inst, fallback);
      }
      throw Error(ErrorCode::GreedyStuck, "greedy coloring has no color left at vertex " + std::to_string(v));
    }
    switch (mode) {
      case StartMode::Smallest: col[v] = avail.front(); break;
      case StartMode::Largest: col[v] = avail.back(); break;
      case StartMode::Random: col[v] = avail[rng.below(avail.size())]; break;
    }
  }
  return col;
}

struct TraceSnapshot {
  std::uint64_t t = 0;
  int hamming = 0;                  // distance to the chain's start
  std::vector<std::uint64_t> color_counts;  // index c-1 for color c
};

struct ChainTrace {
  std::uint64_t stream_seed = 0;
  std::vector<TraceSnapshot> stats;
  std::vector<Color> final_coloring;
};

struct TraceConfig {
  std::uint64_t steps = 0;
  std::uint64_t stride = 1;
  std::uint64_t seed = 0;
  int chains = 1;
  StartMode start = StartMode::Smallest;
  unsigned threads = 1;
};

struct Trace {
  std::uint64_t seed = 0;
  std::uint64_t stride = 1;
  std::uint64_t steps = 0;
  std::vector<ChainTrace> chains;
};

inline TraceSnapshot snapshot(const std::vector<Color>& cur, const std::vector<Color>& ref, int q, std::uint64_t t) {
  TraceSnapshot s;
  s.t = t;
  s.color_counts.assign(static_cast<std::size_t>(q), 0);
  for (std::size_t v = 0; v < cur.size(); ++v) {
    s.hamming += cur[v] != ref[v];
    ++s.color_counts[cur[v] - 1];
  }
  return s;
}

/// Runs `chains` independent chains; chain c draws from stream split(seed, c).
inline Trace run_chain(const ListColoringInstance& inst, const TraceConfig& cfg) {
  if (cfg.stride == 0) throw Error(ErrorCode::BadParams, "stride must be positive");
  if (cfg.chains < 1) throw Error(ErrorCode::BadParams, "need at least one chain");
  Trace tr;
  tr.seed = cfg.seed;
  tr.stride = cfg.stride;
  tr.steps = cfg.steps;
  tr.chains.resize(static_cast<std::size_t>(cfg.chains));
  const GlauberSampler sampler(inst);
  parallel_for(tr.chains.size(), cfg.threads, [&](std::size_t c) {
    auto& ct = tr.chains[c];
    ct.stream_seed = split_seed(cfg.seed, c);
    Xoshiro256 rng(ct.stream_seed);
    const auto start = initial_state(inst, cfg.start, ct.stream_seed);
    auto st = sampler.make_state(start);
    ct.stats.push_back(snapshot(st.coloring, start, inst.q(), 0));
    for (std::uint64_t t = 0; t < cfg.steps;) {
      const std::uint64_t chunk = std::min(cfg.stride, cfg.steps - t);
      sampler.run(st, rng, chunk);
      t += chunk;
      ct.stats.push_back(snapshot(st.coloring, start, inst.q(), t));
    }
    ct.final_coloring = st.coloring;
  });
  return tr;
}

struct TvEstimate {
  double tv = 0.0;
  std::size_t states = 0;
  std::uint64_t chains = 0;
  std::uint64_t steps = 0;
  double plugin_bias_bound = 0.0;  // |Omega| / (2 chains)
  double rms_bound = 0.0;          // sqrt(|Omega| / chains) / 2
  double noise_floor = 0.0;        // expected plug-in distance under exact sampling
  bool ergodic = true;
  std::string label = "fixed-start TV";
  std::string warning;
};

/// Empirical distribution of the final states of independent chains started
/// at the deterministic greedy coloring, against the uniform distribution.
inline TvEstimate estimate_tv(const ListColoringInstance& inst, std::uint64_t steps, std::uint64_t chains,
                              std::uint64_t seed, unsigned threads = 1, std::size_t cap = 2000000) {
  if (chains == 0) throw Error(ErrorCode::BadParams, "need at least one chain");
  const ColoringSpace space(inst, cap);
  TvEstimate est;
  est.states = space.size();
  est.chains = chains;
  est.steps = steps;
  est.ergodic = inst.glauber_valid();
  if (!est.ergodic) est.warning = "NotErgodic: some |L(v)| < deg(v) + 2; the chain may be reducible";
  const GlauberSampler sampler(inst);
  const auto start = initial_state(inst, StartMode::Smallest, seed);
  std::vector<std::size_t> finals(static_cast<std::size_t>(chains));
  parallel_for(finals.size(), threads, [&](std::size_t c) {
    Xoshiro256 rng(split_seed(seed, c));
    auto st = sampler.make_state(start);
    sampler.run(st, rng, steps);
    finals[c] = space.index_of(st.coloring);
  });
  std::vector<std::uint64_t> hist(space.size(), 0);
  for (auto f : finals) ++hist[f];
  const double p = 1.0 / static_cast<double>(space.size());
  const double nchains = static_cast<double>(chains);
  double sum = 0.0;
  for (auto h : hist) sum += std::abs(static_cast<double>(h) / nchains - p);
  est.tv = 0.5 * sum;
  est.plugin_bias_bound = static_cast<double>(space.size()) / (2.0 * nchains);
  est.rms_bound = 0.5 * std::sqrt(static_cast<double>(space.size()) / nchains);
  est.noise_floor = 0.5 * static_cast<double>(space.size()) * std::sqrt(2.0 * p * (1.0 - p) / (std::numbers::pi * nchains));
  return est;
}

struct CouplingResult {
  bool coalesced = false;
  std::uint64_t steps = 0;
  std::uint64_t max_steps = 0;
  int initial_distance = 0;
  std::string label = "diagnostic: identity coupling on sorted available sets";
};

/// Two chains from the smallest-color and largest-color greedy starts, driven
/// by the same vertex and the same uniform draw at every step.
inline CouplingResult coupling_time(const ListColoringInstance& inst, std::uint64_t seed, std::uint64_t max_steps) {
  if (!inst.glauber_valid())
    throw Error(ErrorCode::NotErgodic, "coupling needs |L(v)| >= deg(v) + 2 at every vertex");
  CouplingResult r;
  r.max_steps = max_steps;
  const GlauberSampler sampler(inst);
  auto a = sampler.make_state(initial_state(inst, StartMode::Smallest, seed));
  auto b = sampler.make_state(initial_state(inst, StartMode::Largest, seed));
  int diff = 0;
  for (int v = 0; v < inst.size(); ++v) diff += a.coloring[v] != b.coloring[v];
  r.initial_distance = diff;
  if (diff == 0) {
    r.coalesced = true;
    return r;
  }
  Xoshiro256 rng(seed);
  const auto n = static_cast<std::uint64_t>(inst.size());
  for (std::uint64_t t = 1; t <= max_steps; ++t) {
    const auto v = static_cast<Vertex>(rng.below(n));
    const double u = rng.uniform01();
    const bool before = a.coloring[v] != b.coloring[v];
    sampler.update(a, v, u);
    sampler.update(b, v, u);
    diff += static_cast<int>(a.coloring[v] != b.coloring[v]) - static_cast<int>(before);
    if (diff == 0) {
      r.coalesced = true;
      r.steps = t;
      return r;
    }
  }
  r.steps = max_steps;
  return r;
}

/// Steps per second of a single chain (wall clock).
inline double measure_throughput(const ListColoringInstance& inst, std::uint64_t steps, std::uint64_t seed) {
  const GlauberSampler sampler(inst);
  auto st = sampler.make_state(initial_state(inst, StartMode::Smallest, seed));
  Xoshiro256 rng(seed);
  sampler.run(st, rng, std::min<std::uint64_t>(steps / 10, 1000000));
  const auto t0 = std::chrono::steady_clock::now();
  sampler.run(st, rng, steps);
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  if (!is_proper_coloring(inst, st.coloring)) throw Error(ErrorCode::NumericalFailure, "chain left the state space");
  return static_cast<double>(steps) / secs;
}

}  // namespace scol

#endif  // SCOL_DYNAMICS_HPP
