#ifndef SCOL_ORACLE_HPP
#define SCOL_ORACLE_HPP

// Exact enumeration of proper list-colorings and the probabilities of the
// uniform distribution over them. Counts are exact 64-bit integers; the
// enumeration cap keeps every count far below overflow.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scol/color_mask.hpp"
#include "scol/error.hpp"
#include "scol/graph.hpp"
#include "scol/parallel.hpp"

namespace scol {

/// Enumerates U_{G,L} = {(v,i) : i in L(v)} vertex-major, colors ascending.
class PairIndex {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  PairIndex() = default;

  explicit PairIndex(const ListColoringInstance& inst) : n_(inst.size()) {
    for (int v = 0; v < n_; ++v)
      if (inst.list_size(v) > 0) max_color_ = std::max(max_color_, inst.list(v).back());
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    lookup_.assign(static_cast<std::size_t>(n_) * (max_color_ + 1), npos);
    for (int v = 0; v < n_; ++v) {
      offsets_[v + 1] = offsets_[v] + inst.list(v).size();
      std::size_t a = offsets_[v];
      for (Color c : inst.list(v)) {
        lookup_[static_cast<std::size_t>(v) * (max_color_ + 1) + c] = a++;
        pairs_.emplace_back(v, c);
      }
    }
  }

  std::size_t size() const { return pairs_.size(); }

  /// U index of (v,c) or npos if c is not in L(v).
  std::size_t find(Vertex v, Color c) const {
    if (c < 1 || c > max_color_) return npos;
    return lookup_[static_cast<std::size_t>(v) * (max_color_ + 1) + c];
  }

  std::size_t at(Vertex v, Color c) const {
    const auto a = find(v, c);
    if (a == npos)
      throw Error(ErrorCode::ColorNotInList,
                  "color " + std::to_string(c) + " not in L(" + std::to_string(v) + ")");
    return a;
  }

  std::pair<Vertex, Color> pair(std::size_t a) const { return pairs_[a]; }
  std::size_t begin(Vertex v) const { return offsets_[v]; }
  std::size_t end(Vertex v) const { return offsets_[v + 1]; }
  int vertex_count() const { return n_; }

 private:
  int n_ = 0;
  int max_color_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> lookup_;
  std::vector<std::pair<Vertex, Color>> pairs_;
};

struct OracleOptions {
  /// Reject instances whose product of list sizes exceeds this bound.
  double max_product = 1e8;
  /// Also accumulate pairwise joint counts.
  bool joint = false;
  unsigned threads = 1;
};

/// Exact counts for the uniform distribution on proper list-colorings.
struct ColoringCount {
  std::uint64_t total = 0;
  /// count of colorings with sigma_v = i, indexed by PairIndex.
  std::vector<std::uint64_t> per_pair;
  /// |U| x |U| row-major joint counts; same-vertex blocks are diagonal
  /// (sigma_v = i and sigma_v = k only when i = k). Empty unless requested.
  std::vector<std::uint64_t> per_quad;
};

inline double enumeration_size_bound(const ListColoringInstance& inst) {
  double p = 1.0;
  for (int v = 0; v < inst.size(); ++v) p *= inst.list_size(v);
  return p;
}

namespace detail {

struct CountAccumulator {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_pair;
  std::vector<std::uint64_t> joint;  // only entries a < b are filled
};

/// Backtracking in vertex-index order with forward pruning: a chosen color is
/// removed from the lists of later neighbors and a branch dies as soon as a
/// later list empties. The last vertex is counted in bulk.
class ColoringEnumerator {
 public:
  ColoringEnumerator(const ListColoringInstance& inst, const PairIndex& index, bool joint)
      : inst_(inst), index_(index), joint_(joint), n_(inst.size()) {
    const Graph& g = inst.graph();
    avail_.resize(static_cast<std::size_t>(n_));
    later_.resize(static_cast<std::size_t>(n_));
    chosen_.assign(static_cast<std::size_t>(n_), 0);
    for (int v = 0; v < n_; ++v) {
      avail_[v] = inst.mask(v);
      for (Vertex w : g.neighbors(v))
        if (w > v) later_[v].push_back(w);
    }
  }

  /// Enumerate all colorings, or only those with vertex 0 colored `first`.
  void run(CountAccumulator& acc, Color first = 0) {
    const std::size_t u = index_.size();
    acc.per_pair.assign(u, 0);
    if (joint_) acc.joint.assign(u * u, 0);
    acc_ = &acc;
    if (n_ == 0) {
      acc.total = 1;
      return;
    }
    if (first != 0) {
      if (!avail_[0].test(first)) return;
      ColorMask only = ColorMask::single(first);
      const ColorMask saved = avail_[0];
      avail_[0] = only;
      descend(0);
      avail_[0] = saved;
    } else {
      descend(0);
    }
  }

 private:
  void descend(Vertex v) {
    if (v == n_ - 1) {
      leaf(v);
      return;
    }
    const ColorMask choices = avail_[v];
    choices.for_each([&](Color c) {
      chosen_[v] = index_.find(v, c);
      const std::size_t mark = undo_.size();
      bool alive = true;
      for (Vertex w : later_[v]) {
        if (avail_[w].test(c)) {
          avail_[w].reset(c);
          undo_.push_back(w);
          if (avail_[w].empty()) {
            alive = false;
            break;
          }
        }
      }
      if (alive) descend(v + 1);
      while (undo_.size() > mark) {
        avail_[undo_.back()].set(c);
        undo_.pop_back();
      }
    });
  }

  void leaf(Vertex v) {
    auto& acc = *acc_;
    const ColorMask last = avail_[v];
    const std::uint64_t m = static_cast<std::uint64_t>(last.count());
    if (m == 0) return;
    const std::size_t u = index_.size();
    acc.total += m;
    for (int t = 0; t < v; ++t) acc.per_pair[chosen_[t]] += m;
    last.for_each([&](Color c) { ++acc.per_pair[index_.find(v, c)]; });
    if (!joint_) return;
    for (int s = 0; s < v; ++s) {
      std::uint64_t* row = acc.joint.data() + chosen_[s] * u;
      for (int t = s + 1; t < v; ++t) row[chosen_[t]] += m;
    }
    last.for_each([&](Color c) {
      const std::size_t b = index_.find(v, c);
      for (int t = 0; t < v; ++t) ++acc.joint[chosen_[t] * u + b];
    });
  }

  const ListColoringInstance& inst_;
  const PairIndex& index_;
  bool joint_;
  int n_;
  std::vector<ColorMask> avail_;
  std::vector<std::vector<Vertex>> later_;
  std::vector<std::size_t> chosen_;
  std::vector<Vertex> undo_;
  CountAccumulator* acc_ = nullptr;
};

inline void check_enumerable(const ListColoringInstance& inst, const OracleOptions& opts) {
  for (int v = 0; v < inst.size(); ++v)
    if (inst.list(v).back() > ColorMask::kMaxColor)
      throw Error(ErrorCode::TooLarge, "exact enumeration supports colors up to 128");
  const double bound = enumeration_size_bound(inst);
  if (bound > opts.max_product || bound > 1e18)
    throw Error(ErrorCode::TooLarge, "product of list sizes " + std::to_string(bound) +
                                         " exceeds the enumeration cap " + std::to_string(opts.max_product));
}

}  // namespace detail

/// Exact counts (total, per (v,i), optionally per pair of pairs).
/// Throws TooLarge above the cap and Unsatisfiable when no coloring exists.
inline ColoringCount count_colorings(const ListColoringInstance& inst, const OracleOptions& opts = {}) {
  detail::check_enumerable(inst, opts);
  const PairIndex index(inst);
  const std::size_t u = index.size();
  ColoringCount out;

  if (opts.threads > 1 && inst.size() > 1) {
    auto first = inst.list(0);
    std::vector<detail::CountAccumulator> parts(first.size());
    parallel_for(first.size(), opts.threads, [&](std::size_t t) {
      detail::ColoringEnumerator e(inst, index, opts.joint);
      e.run(parts[t], first[t]);
    });
    out.per_pair.assign(u, 0);
    std::vector<std::uint64_t> joint(opts.joint ? u * u : 0, 0);
    for (const auto& p : parts) {
      out.total += p.total;
      for (std::size_t a = 0; a < u; ++a) out.per_pair[a] += p.per_pair[a];
      for (std::size_t x = 0; x < joint.size(); ++x) joint[x] += p.joint[x];
    }
    out.per_quad = std::move(joint);
  } else {
    detail::CountAccumulator acc;
    detail::ColoringEnumerator e(inst, index, opts.joint);
    e.run(acc);
    out.total = acc.total;
    out.per_pair = std::move(acc.per_pair);
    out.per_quad = std::move(acc.joint);
  }

  if (out.total == 0) throw Error(ErrorCode::Unsatisfiable, "instance has no proper list-coloring");
  if (opts.joint) {
    auto& j = out.per_quad;
    for (std::size_t a = 0; a < u; ++a) {
      j[a * u + a] = out.per_pair[a];
      for (std::size_t b = a + 1; b < u; ++b) j[b * u + a] = j[a * u + b];
    }
  }
  return out;
}

/// Non-throwing satisfiability check (same enumeration cap).
inline bool is_satisfiable(const ListColoringInstance& inst, const OracleOptions& opts = {}) {
  try {
    count_colorings(inst, OracleOptions{opts.max_product, false, 1});
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unsatisfiable) return false;
    throw;
  }
}

/// Exact distribution P_{G,L}: counts plus the joint table, with the
/// probability queries every influence computation is built from.
class Distribution {
 public:
  explicit Distribution(ListColoringInstance inst, OracleOptions opts = {})
      : inst_(std::move(inst)), index_(inst_) {
    opts.joint = true;
    counts_ = count_colorings(inst_, opts);
  }

  const ListColoringInstance& instance() const { return inst_; }
  const PairIndex& index() const { return index_; }
  const ColoringCount& counts() const { return counts_; }
  std::uint64_t total() const { return counts_.total; }
  int size() const { return inst_.size(); }

  /// Number of colorings with sigma_v = c (0 when c is not in L(v)).
  std::uint64_t count(Vertex v, Color c) const {
    const auto a = index_.find(v, c);
    return a == PairIndex::npos ? 0 : counts_.per_pair[a];
  }

  std::uint64_t joint_count(Vertex v, Color i, Vertex w, Color k) const {
    const auto a = index_.find(v, i);
    const auto b = index_.find(w, k);
    if (a == PairIndex::npos || b == PairIndex::npos) return 0;
    return counts_.per_quad[a * index_.size() + b];
  }

  /// P(sigma_v = c); zero for colors outside L(v).
  double marginal(Vertex v, Color c) const {
    return static_cast<double>(count(v, c)) / static_cast<double>(counts_.total);
  }

  std::pair<std::uint64_t, std::uint64_t> marginal_exact(Vertex v, Color c) const { return {count(v, c), counts_.total}; }

  /// P(sigma_w = k | sigma_v = i). For w = v this is the indicator [i = k].
  double conditional(Vertex v, Color i, Vertex w, Color k) const {
    const auto a = index_.at(v, i);
    const std::uint64_t base = counts_.per_pair[a];
    if (base == 0)
      throw Error(ErrorCode::ZeroConditioning,
                  "P(sigma_" + std::to_string(v) + " = " + std::to_string(i) + ") = 0");
    const auto b = index_.find(w, k);
    if (b == PairIndex::npos) return 0.0;
    return static_cast<double>(counts_.per_quad[a * index_.size() + b]) / static_cast<double>(base);
  }

  /// max_c P(sigma_v = c).
  double p_max(Vertex v) const {
    std::uint64_t best = 0;
    for (std::size_t a = index_.begin(v); a < index_.end(v); ++a) best = std::max(best, counts_.per_pair[a]);
    return static_cast<double>(best) / static_cast<double>(counts_.total);
  }

  /// P(sigma_u = c) / P(sigma_u != c); zero for colors outside L(u).
  double ratio(Vertex u, Color c) const {
    const std::uint64_t hit = count(u, c);
    if (hit == 0) return 0.0;
    if (hit == counts_.total)
      throw Error(ErrorCode::DegenerateMarginal,
                  "vertex " + std::to_string(u) + " is forced to color " + std::to_string(c));
    return static_cast<double>(hit) / static_cast<double>(counts_.total - hit);
  }

  /// max over c in L(u) of ratio(u, c).
  double ratio_max(Vertex u) const {
    double best = 0.0;
    for (Color c : inst_.list(u)) best = std::max(best, ratio(u, c));
    return best;
  }

 private:
  ListColoringInstance inst_;
  PairIndex index_;
  ColoringCount counts_;
};

/// Exact distributions for every member of a collection.
inline std::vector<Distribution> analyze_collection(const InstanceCollection& coll, const OracleOptions& opts = {}) {
  std::vector<std::optional<Distribution>> slots(coll.size());
  OracleOptions inner = opts;
  inner.threads = 1;
  parallel_for(coll.size(), opts.threads, [&](std::size_t t) { slots[t].emplace(coll.members()[t], inner); });
  std::vector<Distribution> out;
  out.reserve(coll.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Single-query conveniences over a fresh enumeration.

inline double marginal(const ListColoringInstance& inst, Vertex v, Color i, const OracleOptions& opts = {}) {
  if (!inst.in_list(v, i)) throw Error(ErrorCode::ColorNotInList, "color not in L(v)");
  const auto c = count_colorings(inst, opts);
  return static_cast<double>(c.per_pair[PairIndex(inst).at(v, i)]) / static_cast<double>(c.total);
}

inline double conditional_marginal(const ListColoringInstance& inst, Vertex v, Color i, Vertex w, Color k,
                                   const OracleOptions& opts = {}) {
  if (w == v) throw Error(ErrorCode::BadParams, "conditional marginal needs w != v");
  return Distribution(inst, opts).conditional(v, i, w, k);
}

inline double ratio_R(const ListColoringInstance& inst, Vertex u, const OracleOptions& opts = {}) {
  return Distribution(inst, opts).ratio_max(u);
}

/// R over a collection: max over members of the per-member ratio maximum.
inline double ratio_R(const std::vector<Distribution>& members, Vertex u) {
  double best = 0.0;
  for (const auto& d : members) best = std::max(best, d.ratio_max(u));
  return best;
}

inline double p_max(const ListColoringInstance& inst, Vertex v, const OracleOptions& opts = {}) {
  return Distribution(inst, opts).p_max(v);
}

}  // namespace scol

#endif  // SCOL_ORACLE_HPP
