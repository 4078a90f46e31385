#ifndef SCOL_GLAUBER_HPP
#define SCOL_GLAUBER_HPP

// The exact Glauber transition matrix over an enumerated state space.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scol/graph.hpp"
#include "scol/oracle.hpp"

namespace scol {

/// All proper list-colorings, in lexicographic order by vertex index then
/// color. States are addressed by a mixed-radix key over list positions, which
/// is monotone in that order, so lookup is a binary search.
class ColoringSpace {
 public:
  ColoringSpace(const ListColoringInstance& inst, std::size_t cap) : inst_(inst), n_(inst.size()) {
    radix_.assign(static_cast<std::size_t>(n_), 1);
    double product = 1.0;
    for (int v = n_ - 1; v >= 0; --v) {
      radix_[v] = static_cast<std::uint64_t>(product);
      product *= inst.list_size(v);
    }
    if (product > 1e18) throw Error(ErrorCode::TooLarge, "state keys would overflow");
    std::vector<Color> current(static_cast<std::size_t>(n_), 0);
    if (n_ > 0) fill(0, 0, current, cap);
    else keys_.push_back(0);
  }

  std::size_t size() const { return keys_.size(); }
  int vertex_count() const { return n_; }
  const ListColoringInstance& instance() const { return inst_; }

  std::span<const Color> state(std::size_t s) const {
    return {colors_.data() + s * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }

  std::uint64_t key_of(std::span<const Color> coloring) const {
    std::uint64_t key = 0;
    for (int v = 0; v < n_; ++v) {
      auto l = inst_.list(v);
      const auto it = std::lower_bound(l.begin(), l.end(), coloring[v]);
      key += static_cast<std::uint64_t>(it - l.begin()) * radix_[v];
    }
    return key;
  }

  /// Index of a proper coloring, or size() if it is not a state.
  std::size_t index_of(std::span<const Color> coloring) const {
    const auto key = key_of(coloring);
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return size();
    return static_cast<std::size_t>(it - keys_.begin());
  }

 private:
  void fill(int v, std::uint64_t key, std::vector<Color>& cur, std::size_t cap) {
    const Graph& g = inst_.graph();
    auto l = inst_.list(v);
    for (std::size_t t = 0; t < l.size(); ++t) {
      const Color c = l[t];
      bool ok = true;
      for (Vertex w : g.neighbors(v))
        if (w < v && cur[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur[v] = c;
      const std::uint64_t k = key + t * radix_[v];
      if (v + 1 == n_) {
        if (keys_.size() >= cap)
          throw Error(ErrorCode::TooLarge, "more than " + std::to_string(cap) + " proper colorings");
        keys_.push_back(k);
        colors_.insert(colors_.end(), cur.begin(), cur.end());
      } else {
        fill(v + 1, k, cur, cap);
      }
    }
    cur[v] = 0;
  }

  ListColoringInstance inst_;
  int n_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint64_t> keys_;
  std::vector<Color> colors_;
};

struct GlauberMatrix {
  ColoringSpace space;
  Eigen::SparseMatrix<double, Eigen::RowMajor> transition;
};

/// Exact transition matrix: pick v uniformly, then a color uniformly from
/// L(v) minus the colors on N(v) (the current color included).
inline GlauberMatrix glauber_matrix(const ListColoringInstance& inst, std::size_t cap = 200000) {
  if (!inst.glauber_valid())
    throw Error(ErrorCode::NotErgodic, "the chain needs |L(v)| >= deg(v) + 2 at every vertex");
  ColoringSpace space(inst, cap);
  const int n = inst.size();
  const Graph& g = inst.graph();
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<Color> next(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < space.size(); ++s) {
    auto cur = space.state(s);
    for (int v = 0; v < n; ++v) {
      ColorMask avail = inst.mask(v);
      for (Vertex w : g.neighbors(v)) avail.reset(cur[w]);
      const double p = 1.0 / (static_cast<double>(n) * avail.count());
      std::copy(cur.begin(), cur.end(), next.begin());
      avail.for_each([&](Color c) {
        next[v] = c;
        trips.emplace_back(static_cast<int>(s), static_cast<int>(space.index_of(next)), p);
      });
    }
  }
  GlauberMatrix gm{std::move(space), {}};
  const auto m = static_cast<Eigen::Index>(gm.space.size());
  gm.transition.resize(m, m);
  gm.transition.setFromTriplets(trips.begin(), trips.end());
  gm.transition.makeCompressed();
  return gm;
}

struct SpectralGap {
  double lambda2 = 0.0;
  double gap = 1.0;
  std::string method;
  double mixing_bound = 0.0;  // n ln(4Q) / (1 - lambda2)
  std::size_t states = 0;
  int iterations = 0;
};

namespace detail {

/// Largest eigenvalue of the symmetric operator P restricted to the
/// complement of the uniform vector: Lanczos with full reorthogonalization.
inline std::pair<double, int> lanczos_top_deflated(const Eigen::SparseMatrix<double, Eigen::RowMajor>& p,
                                                   int max_iter, double tol) {
  const Eigen::Index m = p.rows();
  const Eigen::VectorXd uniform = Eigen::VectorXd::Ones(m) / std::sqrt(static_cast<double>(m));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  Eigen::VectorXd q(m);
  for (Eigen::Index t = 0; t < m; ++t) q(t) = std::sin(1.0 + 0.7 * static_cast<double>(t)) + 0.01 * (t % 7);
  q -= uniform * uniform.dot(q);
  q.normalize();
  double prev = 2.0;
  const int limit = static_cast<int>(std::min<Eigen::Index>(max_iter, m - 1));
  for (int k = 0; k < limit; ++k) {
    basis.push_back(q);
    Eigen::VectorXd w = p * q;
    alpha.push_back(q.dot(w));
    w -= uniform * uniform.dot(w);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b * b.dot(w);
    const double bnorm = w.norm();
    const int dim = k + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
      tri(r, r) = alpha[r];
      if (r + 1 < dim) tri(r, r + 1) = tri(r + 1, r) = beta[r];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double top = es.eigenvalues()(dim - 1);
    const double resid = std::abs(bnorm * es.eigenvectors()(dim - 1, dim - 1));
    if (bnorm < 1e-14 || (resid < tol && std::abs(top - prev) < tol)) return {top, dim};
    prev = top;
    beta.push_back(bnorm);
    q = w / bnorm;
  }
  if (limit == m - 1 && m > 1) return {prev, limit};
  throw Error(ErrorCode::NumericalFailure, "Lanczos iteration did not converge");
}

}  // namespace detail

/// 1 - lambda2 of the exact chain. Dense symmetric solve up to
/// `dense_limit` states, Lanczos beyond.
inline SpectralGap spectral_gap(const GlauberMatrix& gm, std::size_t dense_limit = 2500) {
  SpectralGap r;
  const auto& inst = gm.space.instance();
  r.states = gm.space.size();
  if (r.states <= 1) {
    r.lambda2 = 0.0;
    r.method = "trivial";
  } else if (r.states <= dense_limit) {
    Eigen::MatrixXd dense(gm.transition);
    dense = 0.5 * (dense + dense.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "dense eigen-solve did not converge");
    r.lambda2 = es.eigenvalues()(es.eigenvalues().size() - 2);
    r.method = "symmetric-dense";
  } else {
    const int budget = static_cast<int>(std::clamp<std::size_t>(20000000 / r.states, 60, 400));
    auto [top, its] = detail::lanczos_top_deflated(gm.transition, budget, 1e-11);
    r.lambda2 = top;
    r.iterations = its;
    r.method = "lanczos";
  }
  r.gap = 1.0 - r.lambda2;
  const double big_q = inst.size() == 0 ? 1.0 : static_cast<double>(inst.max_list_size());
  r.mixing_bound = inst.size() * std::log(4.0 * big_q) / r.gap;
  return r;
}

/// Worst-start total variation distance after t steps, and the exact mixing
/// time (first t with distance <= 1/4), from the full eigendecomposition.
class ExactMixing {
 public:
  explicit ExactMixing(const GlauberMatrix& gm, std::size_t limit = 1500) {
    const auto m = static_cast<Eigen::Index>(gm.space.size());
    if (static_cast<std::size_t>(m) > limit)
      throw Error(ErrorCode::TooLarge, "exact worst-start distance is limited to " + std::to_string(limit) + " states");
    Eigen::MatrixXd dense(gm.transition);
    dense = 0.5 * (dense + dense.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "dense eigen-solve did not converge");
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }

  double worst_tv(std::uint64_t t) const {
    const auto m = vectors_.rows();
    Eigen::VectorXd pw(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) pw(k) = std::pow(values_(k), static_cast<double>(t));
    if (t == 0) pw.setOnes();
    const Eigen::MatrixXd pt = vectors_ * pw.asDiagonal() * vectors_.transpose();
    double worst = 0.0;
    const double u = 1.0 / static_cast<double>(m);
    for (Eigen::Index s = 0; s < m; ++s) worst = std::max(worst, 0.5 * (pt.row(s).array() - u).abs().sum());
    return worst;
  }

  std::uint64_t mixing_time(double threshold = 0.25, std::uint64_t cap = 100000000) const {
    if (worst_tv(0) <= threshold) return 0;
    std::uint64_t hi = 1;
    while (worst_tv(hi) > threshold) {
      if (hi >= cap) throw Error(ErrorCode::TooLarge, "mixing time exceeds the search cap");
      hi *= 2;
    }
    std::uint64_t lo = hi / 2;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (worst_tv(mid) > threshold) lo = mid;
      else hi = mid;
    }
    return hi;
  }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

}  // namespace scol

#endif  // SCOL_GLAUBER_HPP
