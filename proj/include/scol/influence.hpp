#ifndef SCOL_INFLUENCE_HPP
#define SCOL_INFLUENCE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scol/oracle.hpp"

namespace scol {

/// M((v,i),(w,k)) = P(sigma_w = k | sigma_v = i) - P(sigma_w = k) for v != w,
/// zero on same-vertex blocks. Rows and columns follow PairIndex.
struct InfluenceMatrix {
  PairIndex index;
  Eigen::MatrixXd entries;

  /// Entry with the zero extension outside U.
  double at(Vertex v, Color i, Vertex w, Color k) const {
    const auto a = index.find(v, i);
    const auto b = index.find(w, k);
    if (a == PairIndex::npos || b == PairIndex::npos) return 0.0;
    return entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
};

inline InfluenceMatrix influence_matrix(const Distribution& d) {
  const auto& idx = d.index();
  const auto& c = d.counts();
  const auto u = static_cast<Eigen::Index>(idx.size());
  const double total = static_cast<double>(c.total);
  InfluenceMatrix m{idx, Eigen::MatrixXd::Zero(u, u)};
  for (Eigen::Index a = 0; a < u; ++a) {
    const auto [v, i] = idx.pair(static_cast<std::size_t>(a));
    const std::uint64_t base = c.per_pair[a];
    if (base == 0)
      throw Error(ErrorCode::ZeroConditioning,
                  "P(sigma_" + std::to_string(v) + " = " + std::to_string(i) + ") = 0");
    const std::uint64_t* row = c.per_quad.data() + a * u;
    for (Eigen::Index b = 0; b < u; ++b) {
      if (idx.pair(static_cast<std::size_t>(b)).first == v) continue;
      m.entries(a, b) = static_cast<double>(row[b]) / static_cast<double>(base) -
                        static_cast<double>(c.per_pair[b]) / total;
    }
  }
  return m;
}

inline InfluenceMatrix influence_matrix(const ListColoringInstance& inst, const OracleOptions& opts = {}) {
  return influence_matrix(Distribution(inst, opts));
}

/// Influences of one source vertex v on every target (w,k), w in V (w = v
/// included, where the conditional is an indicator), k in [q].
class SourceInfluence {
 public:
  SourceInfluence(int n, int q) : n_(n), q_(q), max_(cells(), 0.0), biased_(cells(), 0.0), jhat_(cells(), 0.0) {}

  int vertex_count() const { return n_; }
  int q() const { return q_; }

  double max(Vertex w, Color k) const { return max_[slot(w, k)]; }
  double biased(Vertex w, Color k) const { return biased_[slot(w, k)]; }
  double jhat(Vertex w, Color k) const { return jhat_[slot(w, k)]; }

  void set(Vertex w, Color k, double mx, double bi, double jh) {
    max_[slot(w, k)] = mx;
    biased_[slot(w, k)] = bi;
    jhat_[slot(w, k)] = jh;
  }

  /// Elementwise maximum, for collections on one graph.
  void absorb(const SourceInfluence& other) {
    for (std::size_t x = 0; x < max_.size(); ++x) {
      max_[x] = std::max(max_[x], other.max_[x]);
      biased_[x] = std::max(biased_[x], other.biased_[x]);
      jhat_[x] = std::max(jhat_[x], other.jhat_[x]);
    }
  }

  /// Sum over w != skip and k in [q] of the maximum (or biased) influence.
  double sum_max(Vertex skip) const { return sum(max_, skip); }
  double sum_biased(Vertex skip) const { return sum(biased_, skip); }

 private:
  std::size_t cells() const { return static_cast<std::size_t>(n_) * (q_ + 1); }
  std::size_t slot(Vertex w, Color k) const { return static_cast<std::size_t>(w) * (q_ + 1) + k; }

  double sum(const std::vector<double>& a, Vertex skip) const {
    double s = 0.0;
    for (int w = 0; w < n_; ++w) {
      if (w == skip) continue;
      for (int k = 1; k <= q_; ++k) s += a[slot(w, k)];
    }
    return s;
  }

  int n_;
  int q_;
  std::vector<double> max_, biased_, jhat_;
};

/// All influences of v on (w,k) in one instance, over palette [q].
inline SourceInfluence source_influence(const Distribution& d, Vertex v, int q) {
  const auto& inst = d.instance();
  const int n = inst.size();
  SourceInfluence out(n, std::max(q, inst.q()));
  auto lv = inst.list(v);
  std::vector<double> x(lv.size());
  for (int w = 0; w < n; ++w) {
    for (Color k : inst.list(w)) {
      const double pk = d.marginal(w, k);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      double blo = lo, bhi = -lo, jh = 0.0;
      int others = 0;
      for (std::size_t t = 0; t < lv.size(); ++t) {
        const double xi = d.conditional(v, lv[t], w, k);
        lo = std::min(lo, xi);
        hi = std::max(hi, xi);
        if (lv[t] != k) {
          ++others;
          blo = std::min(blo, xi);
          bhi = std::max(bhi, xi);
          jh = std::max(jh, std::abs(xi - pk));
        }
      }
      const double mx = lv.size() >= 2 ? hi - lo : 0.0;
      const double bi = others >= 2 ? bhi - blo : 0.0;
      out.set(w, k, mx, bi, jh);
    }
  }
  return out;
}

/// Collection version: maxima over members.
inline SourceInfluence source_influence(const std::vector<Distribution>& members, Vertex v, int q) {
  if (members.empty()) throw Error(ErrorCode::BadParams, "empty collection");
  int qq = q;
  for (const auto& d : members) qq = std::max(qq, d.instance().q());
  SourceInfluence out(members.front().size(), qq);
  for (const auto& d : members) out.absorb(source_influence(d, v, qq));
  return out;
}

inline double max_influence(const Distribution& d, Vertex v, Vertex w, Color k) {
  if (!d.instance().in_list(w, k)) return 0.0;
  return source_influence(d, v, d.instance().q()).max(w, k);
}

inline double biased_influence(const Distribution& d, Vertex v, Vertex w, Color k) {
  if (!d.instance().in_list(w, k)) return 0.0;
  return source_influence(d, v, d.instance().q()).biased(w, k);
}

inline double jhat_influence(const Distribution& d, Vertex v, Vertex w, Color k) {
  if (!d.instance().in_list(w, k)) return 0.0;
  return source_influence(d, v, d.instance().q()).jhat(w, k);
}

inline double max_influence(const std::vector<Distribution>& members, Vertex v, Vertex w, Color k) {
  double best = 0.0;
  for (const auto& d : members) best = std::max(best, max_influence(d, v, w, k));
  return best;
}

inline double biased_influence(const std::vector<Distribution>& members, Vertex v, Vertex w, Color k) {
  double best = 0.0;
  for (const auto& d : members) best = std::max(best, biased_influence(d, v, w, k));
  return best;
}

/// Per-degree totals: zero for isolated v, else (1/deg(v)) * sum over w != v, k in [q].
inline double total_from(const SourceInfluence& s, const Graph& g, Vertex v, bool biased) {
  const int deg = g.degree(v);
  if (deg == 0) return 0.0;
  return (biased ? s.sum_biased(v) : s.sum_max(v)) / deg;
}

inline double total_influence(const std::vector<Distribution>& members, Vertex v) {
  const auto s = source_influence(members, v, 0);
  return total_from(s, members.front().instance().graph(), v, false);
}

inline double total_biased_influence(const std::vector<Distribution>& members, Vertex v) {
  const auto s = source_influence(members, v, 0);
  return total_from(s, members.front().instance().graph(), v, true);
}

inline double total_influence(const Distribution& d, Vertex v) {
  return total_from(source_influence(d, v, d.instance().q()), d.instance().graph(), v, false);
}

inline double total_biased_influence(const Distribution& d, Vertex v) {
  return total_from(source_influence(d, v, d.instance().q()), d.instance().graph(), v, true);
}

/// Sum over w != v and k of |M((v,i),(w,k))|.
inline double row_abs_sum(const InfluenceMatrix& m, Vertex v, Color i) {
  const auto a = static_cast<Eigen::Index>(m.index.at(v, i));
  return m.entries.row(a).cwiseAbs().sum();
}

}  // namespace scol

#endif  // SCOL_INFLUENCE_HPP
