#ifndef SCOL_SPECTRAL_HPP
#define SCOL_SPECTRAL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "scol/influence.hpp"
#include "scol/oracle.hpp"
#include "scol/region.hpp"
#include "scol/rng.hpp"

namespace scol {

/// Random walk on the weighted pair graph: vertices are (v,i) pairs, edges
/// join pairs at different vertices with weight P(sigma_v = i, sigma_w = k).
struct PairwiseWalk {
  PairIndex index;
  int n = 0;
  Eigen::MatrixXd joint;       // edge weights, zero on same-vertex blocks
  Eigen::MatrixXd transition;  // row-stochastic
  Eigen::VectorXd stationary;  // P(sigma_v = i) / n
  Eigen::VectorXd marginals;   // P(sigma_v = i)
};

inline PairwiseWalk build_pairwise_walk(const Distribution& d) {
  const int n = d.size();
  if (n < 2) throw Error(ErrorCode::SingleVertex, "the pair walk needs at least two vertices");
  const auto& idx = d.index();
  const auto& c = d.counts();
  const auto u = static_cast<Eigen::Index>(idx.size());
  const double total = static_cast<double>(c.total);
  PairwiseWalk w{idx, n, Eigen::MatrixXd::Zero(u, u), Eigen::MatrixXd::Zero(u, u), Eigen::VectorXd(u), Eigen::VectorXd(u)};
  for (Eigen::Index a = 0; a < u; ++a) {
    if (c.per_pair[a] == 0) {
      const auto [v, i] = idx.pair(static_cast<std::size_t>(a));
      throw Error(ErrorCode::DegenerateMarginal,
                  "P(sigma_" + std::to_string(v) + " = " + std::to_string(i) + ") = 0");
    }
    w.marginals(a) = static_cast<double>(c.per_pair[a]) / total;
    w.stationary(a) = w.marginals(a) / n;
  }
  for (Eigen::Index a = 0; a < u; ++a) {
    const Vertex va = idx.pair(static_cast<std::size_t>(a)).first;
    const double row_norm = static_cast<double>(n - 1) * static_cast<double>(c.per_pair[a]);
    for (Eigen::Index b = 0; b < u; ++b) {
      if (idx.pair(static_cast<std::size_t>(b)).first == va) continue;
      const auto j = c.per_quad[a * u + b];
      w.joint(a, b) = static_cast<double>(j) / total;
      w.transition(a, b) = static_cast<double>(j) / row_norm;
    }
  }
  return w;
}

inline PairwiseWalk build_pairwise_walk(const ListColoringInstance& inst, const OracleOptions& opts = {}) {
  return build_pairwise_walk(Distribution(inst, opts));
}

/// max |pi_a P(a,b) - pi_b P(b,a)|.
inline double reversibility_residual(const PairwiseWalk& w) {
  const Eigen::MatrixXd flow = w.stationary.asDiagonal() * w.transition;
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

/// D^{1/2} P D^{-1/2} with D = diag(marginals); symmetric by reversibility.
inline Eigen::MatrixXd symmetrized_walk(const PairwiseWalk& w) {
  const Eigen::VectorXd s = w.marginals.cwiseSqrt();
  Eigen::MatrixXd a = w.joint / static_cast<double>(w.n - 1);
  a = s.cwiseInverse().asDiagonal() * a * s.cwiseInverse().asDiagonal();
  return 0.5 * (a + a.transpose());
}

/// All eigenvalues of the pair walk, ascending.
inline Eigen::VectorXd walk_spectrum(const PairwiseWalk& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized_walk(w), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "symmetric eigen-solve did not converge");
  return es.eigenvalues();
}

inline double second_eigenvalue_walk(const PairwiseWalk& w) {
  const auto ev = walk_spectrum(w);
  return ev.size() >= 2 ? ev(ev.size() - 2) : ev(0);
}

struct TopEigenvalue {
  double lambda1 = 0.0;
  double max_imag = 0.0;
};

/// Largest real eigenvalue of M from a general (non-symmetric) dense solve.
inline TopEigenvalue top_eigenvalue_influence(const Eigen::MatrixXd& m, double imag_tol = 1e-8) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "general eigen-solve did not converge");
  const auto ev = es.eigenvalues();
  TopEigenvalue out{-std::numeric_limits<double>::infinity(), 0.0};
  for (Eigen::Index t = 0; t < ev.size(); ++t) {
    out.lambda1 = std::max(out.lambda1, ev(t).real());
    out.max_imag = std::max(out.max_imag, std::abs(ev(t).imag()));
  }
  if (out.max_imag > imag_tol)
    throw Error(ErrorCode::ComplexEigenvalue, "influence matrix has an eigenvalue with imaginary part " +
                                                  std::to_string(out.max_imag));
  return out;
}

inline TopEigenvalue top_eigenvalue_influence(const InfluenceMatrix& m, double imag_tol = 1e-8) {
  return top_eigenvalue_influence(m.entries, imag_tol);
}

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Dominant eigenvalue of M + sI (s = infinity norm, so the spectrum is
/// shifted to be non-negative), minus s.
inline PowerIterationResult power_iteration_lambda1(const Eigen::MatrixXd& m, int max_iter = 200000,
                                                    double tol = 1e-13, std::uint64_t seed = 1) {
  PowerIterationResult r;
  if (m.rows() == 0) {
    r.converged = true;
    return r;
  }
  const double shift = m.cwiseAbs().rowwise().sum().maxCoeff() + 1e-3;
  Xoshiro256 rng(seed);
  Eigen::VectorXd x(m.rows());
  for (Eigen::Index t = 0; t < x.size(); ++t) x(t) = rng.uniform01() + 0.5;
  x.normalize();
  double prev = 0.0;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    Eigen::VectorXd y = m * x + shift * x;
    const double est = x.dot(y) / x.squaredNorm();
    const double norm = y.norm();
    if (norm == 0.0) break;
    x = y / norm;
    if (r.iterations > 10 && std::abs(est - prev) <= tol * std::max(1.0, std::abs(est))) {
      r.converged = true;
      r.value = est - shift;
      return r;
    }
    prev = est;
  }
  r.value = prev - shift;
  return r;
}

struct Theorem8Report {
  double lambda2_walk = 0.0;
  double lambda1_m = 0.0;
  double identity_residual = 0.0;
  double max_imag = 0.0;
  double null_residual_ones = 0.0;    // ||M 1||_inf
  double null_residual_vertex = 0.0;  // max_v ||M (1/n 1 - 1_v)||_inf
  double reversibility = 0.0;
  int minus_multiplicity = 0;         // eigenvalues of the walk at -1/(n-1)
  int n = 0;
  std::size_t pairs = 0;
  std::string eigen_method = "symmetric-dense(walk); general-dense(M)";
  double tol = 1e-8;
  double null_tol = 1e-12;
  bool pass = false;
};

/// lambda2(walk) against lambda1(M)/(n-1), each from its own eigen-solve,
/// plus the null vectors of M and the -1/(n-1) eigenspace of the walk.
inline Theorem8Report verify_theorem8(const Distribution& d, double tol = 1e-8, double null_tol = 1e-12) {
  const auto& inst = d.instance();
  if (inst.size() < 2) throw Error(ErrorCode::SingleVertex, "the identity needs at least two vertices");
  if (!inst.glauber_valid())
    throw Error(ErrorCode::HypothesisViolated, "hypothesis violated: |L(v)| >= deg(v) + 2 for every v");
  Theorem8Report r;
  r.n = inst.size();
  r.tol = tol;
  r.null_tol = null_tol;
  const auto walk = build_pairwise_walk(d);
  const auto m = influence_matrix(d);
  r.pairs = m.index.size();
  const auto spectrum = walk_spectrum(walk);
  r.lambda2_walk = spectrum(spectrum.size() - 2);
  const auto top = top_eigenvalue_influence(m);
  r.lambda1_m = top.lambda1;
  r.max_imag = top.max_imag;
  r.identity_residual = std::abs(r.lambda2_walk - r.lambda1_m / (r.n - 1));
  r.reversibility = reversibility_residual(walk);

  const auto u = static_cast<Eigen::Index>(r.pairs);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(u);
  r.null_residual_ones = (m.entries * ones).cwiseAbs().maxCoeff();
  for (int v = 0; v < r.n; ++v) {
    Eigen::VectorXd x = ones / r.n;
    for (auto a = m.index.begin(v); a < m.index.end(v); ++a) x(static_cast<Eigen::Index>(a)) -= 1.0;
    r.null_residual_vertex = std::max(r.null_residual_vertex, (m.entries * x).cwiseAbs().maxCoeff());
  }
  const double target = -1.0 / (r.n - 1);
  for (Eigen::Index t = 0; t < spectrum.size(); ++t)
    if (std::abs(spectrum(t) - target) <= 1e-8) ++r.minus_multiplicity;

  r.pass = r.identity_residual <= tol && r.null_residual_ones <= null_tol && r.null_residual_vertex <= null_tol &&
           r.minus_multiplicity >= r.n - 1;
  return r;
}

inline Theorem8Report verify_theorem8(const ListColoringInstance& inst, double tol = 1e-8,
                                      const OracleOptions& opts = {}) {
  if (inst.size() < 2) throw Error(ErrorCode::SingleVertex, "the identity needs at least two vertices");
  if (!inst.glauber_valid())
    throw Error(ErrorCode::HypothesisViolated, "hypothesis violated: |L(v)| >= deg(v) + 2 for every v");
  return verify_theorem8(Distribution(inst, opts), tol);
}

/// Edge-expansion constant of the pair walk by subset enumeration.
inline double walk_conductance(const PairwiseWalk& w) {
  const auto u = w.transition.rows();
  if (u > 20) throw Error(ErrorCode::TooLarge, "conductance enumeration is limited to 20 pairs");
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t limit = std::uint64_t{1} << u;
  for (std::uint64_t s = 1; s + 1 < limit; ++s) {
    double mass = 0.0;
    for (Eigen::Index a = 0; a < u; ++a)
      if (s >> a & 1U) mass += w.stationary(a);
    if (mass > 0.5 + 1e-15) continue;
    double flow = 0.0;
    for (Eigen::Index a = 0; a < u; ++a) {
      if (!(s >> a & 1U)) continue;
      for (Eigen::Index b = 0; b < u; ++b)
        if (!(s >> b & 1U)) flow += w.stationary(a) * w.transition(a, b);
    }
    best = std::min(best, flow / mass);
  }
  return best;
}

/// Per-size row of the local-expansion sweep.
struct ExpansionRow {
  int s = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t not_delta_q = 0;
  double worst_lambda2 = -std::numeric_limits<double>::infinity();
  double measured_bound = 0.0;          // max(0, worst_lambda2)
  double theoretical_bound = 0.0;       // min{C/(n-1-s), 1 - 2 q^{-4(n-s)}}
  double log1m_theoretical = 0.0;       // ln(1 - theoretical_bound)
  bool within_bound = true;
};

struct SweepReport {
  int n = 0;
  int delta = 0;
  int q = 0;
  double epsilon = 0.0;
  double c_bound = 0.0;  // 64 (1/eps + 1)^2 Delta / q
  bool exhaustive = true;
  std::string certification;  // "exhaustive" or "sampled, not certified"
  std::vector<ExpansionRow> rows;
  double log_product_measured = 0.0;     // ln prod (1 - measured)^{-1}
  double log_product_theoretical = 0.0;  // ln prod (1 - theoretical)^{-1}
  double gap_lower_bound = 0.0;          // (1/n) prod (1 - measured)
  double log_mixing_bound_measured = 0.0;
  double log_mixing_bound_theoretical = 0.0;
  bool hypotheses_hold = false;
  bool all_within_bound = true;
};

namespace detail {

/// e_s(list sizes): number of (subset of size s, list assignment) pairs.
inline std::vector<double> assignment_counts(const ListColoringInstance& inst) {
  const int n = inst.size();
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = 1.0;
  for (int v = 0; v < n; ++v)
    for (int s = v + 1; s >= 1; --s) e[s] += e[s - 1] * inst.list_size(v);
  return e;
}

inline bool next_combination(std::vector<int>& comb, int n) {
  const int s = static_cast<int>(comb.size());
  int t = s - 1;
  while (t >= 0 && comb[t] == n - s + t) --t;
  if (t < 0) return false;
  ++comb[t];
  for (int r = t + 1; r < s; ++r) comb[r] = comb[r - 1] + 1;
  return true;
}

/// Conditioned instance if tau extends to a full coloring, else nullopt.
inline std::optional<ListColoringInstance> extendable_condition(const ListColoringInstance& inst,
                                                                const PartialColoring& tau,
                                                                const OracleOptions& opts) {
  try {
    auto c = condition(inst, tau);
    if (!is_satisfiable(c, opts)) return std::nullopt;
    return c;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonExtendable) return std::nullopt;
    throw;
  }
}

}  // namespace detail

inline double local_expansion_theoretical(int n, int s, int q, double c_bound) {
  const double sizes = static_cast<double>(n - 1 - s);
  const double spectral = c_bound / sizes;
  const double log_conductance = std::log(2.0) - 4.0 * (n - s) * std::log(static_cast<double>(q));
  // 1 - 2 q^{-4(n-s)} underflows to 1 in double; compare in log(1 - l) form.
  if (spectral < 1.0 && std::log1p(-spectral) >= log_conductance) return spectral;
  return -std::expm1(log_conductance);
}

inline double local_expansion_log1m(int n, int s, int q, double c_bound) {
  const double spectral = c_bound / static_cast<double>(n - 1 - s);
  const double log_conductance = std::log(2.0) - 4.0 * (n - s) * std::log(static_cast<double>(q));
  if (spectral < 1.0) return std::max(std::log1p(-spectral), log_conductance);
  return log_conductance;
}

struct SweepOptions {
  double epsilon = 0.5;
  int delta = 3;
  std::size_t budget = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  OracleOptions oracle{};
};

/// Worst second eigenvalue of the pair walk over conditioned instances,
/// per conditioned-set size s = 0..n-2.
inline SweepReport local_expansion_sweep(const ListColoringInstance& inst, const SweepOptions& opt) {
  const int n = inst.size();
  if (n < 2) throw Error(ErrorCode::SingleVertex, "the sweep needs at least two vertices");
  const auto params = region_params(opt.epsilon);
  SweepReport rep;
  rep.n = n;
  rep.delta = opt.delta;
  rep.q = inst.q();
  rep.epsilon = opt.epsilon;
  rep.c_bound = 64.0 * std::pow(1.0 / opt.epsilon + 1.0, 2) * opt.delta / inst.q();
  const bool dq = opt.delta >= 3 && inst.q() >= opt.delta + 2 && is_delta_q_instance(inst, opt.delta, inst.q());
  rep.hypotheses_hold = dq && is_triangle_free(inst.graph()) &&
                        static_cast<double>(inst.q()) >= params.alpha * opt.delta + 1.0;

  const auto counts = detail::assignment_counts(inst);
  double all = 0.0;
  for (int s = 0; s <= n - 2; ++s) all += counts[s];
  rep.exhaustive = all <= static_cast<double>(opt.budget);
  rep.certification = rep.exhaustive ? "exhaustive" : "sampled, not certified";
  const std::size_t per_size = std::max<std::size_t>(1, opt.budget / static_cast<std::size_t>(n - 1));

  for (int s = 0; s <= n - 2; ++s) {
    std::vector<PartialColoring> taus;
    if (rep.exhaustive) {
      std::vector<int> comb(static_cast<std::size_t>(s));
      std::iota(comb.begin(), comb.end(), 0);
      do {
        std::vector<std::size_t> pos(static_cast<std::size_t>(s), 0);
        for (;;) {
          PartialColoring tau;
          for (int t = 0; t < s; ++t) tau.assign(comb[t], inst.list(comb[t])[pos[t]]);
          taus.push_back(std::move(tau));
          int t = s - 1;
          while (t >= 0 && ++pos[t] == static_cast<std::size_t>(inst.list_size(comb[t]))) pos[t--] = 0;
          if (t < 0) break;
        }
      } while (s > 0 && detail::next_combination(comb, n));
    } else {
      Xoshiro256 rng(split_seed(opt.seed, static_cast<std::uint64_t>(s)));
      for (std::size_t t = 0; t < per_size; ++t) {
        std::vector<int> verts(static_cast<std::size_t>(n));
        std::iota(verts.begin(), verts.end(), 0);
        for (int r = 0; r < s; ++r) std::swap(verts[r], verts[r + rng.below(static_cast<std::uint64_t>(n - r))]);
        std::sort(verts.begin(), verts.begin() + s);
        // Rejection: uniform list assignment on the subset until extendable.
        for (int attempt = 0; attempt < 64; ++attempt) {
          PartialColoring tau;
          for (int r = 0; r < s; ++r) {
            auto l = inst.list(verts[r]);
            tau.assign(verts[r], l[rng.below(l.size())]);
          }
          if (detail::extendable_condition(inst, tau, opt.oracle)) {
            taus.push_back(std::move(tau));
            break;
          }
        }
      }
    }

    struct Slot {
      bool ok = false;
      bool dq_ok = true;
      double lambda2 = 0.0;
    };
    std::vector<Slot> slots(taus.size());
    parallel_for(taus.size(), opt.threads, [&](std::size_t t) {
      auto c = detail::extendable_condition(inst, taus[t], opt.oracle);
      if (!c) return;
      try {
        slots[t].lambda2 = second_eigenvalue_walk(build_pairwise_walk(Distribution(*c, opt.oracle)));
        slots[t].ok = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateMarginal) throw;
        return;
      }
      if (dq) slots[t].dq_ok = is_delta_q_instance(*c, opt.delta, inst.q());
    });

    ExpansionRow row;
    row.s = s;
    for (const auto& sl : slots) {
      if (!sl.ok) {
        ++row.skipped;
        continue;
      }
      ++row.evaluated;
      row.worst_lambda2 = std::max(row.worst_lambda2, sl.lambda2);
      if (!sl.dq_ok) ++row.not_delta_q;
    }
    if (row.evaluated == 0) row.worst_lambda2 = 0.0;
    row.measured_bound = std::max(0.0, row.worst_lambda2);
    row.theoretical_bound = local_expansion_theoretical(n, s, inst.q(), rep.c_bound);
    row.log1m_theoretical = local_expansion_log1m(n, s, inst.q(), rep.c_bound);
    row.within_bound = row.measured_bound <= row.theoretical_bound + 1e-9;
    rep.all_within_bound = rep.all_within_bound && row.within_bound;
    rep.log_product_measured -= std::log1p(-row.measured_bound);
    rep.log_product_theoretical -= row.log1m_theoretical;
    rep.rows.push_back(row);
  }
  const double tail = 2.0 * std::log(static_cast<double>(n)) + std::log(std::log(4.0 * inst.q()));
  rep.gap_lower_bound = std::exp(-rep.log_product_measured) / n;
  rep.log_mixing_bound_measured = rep.log_product_measured + tail;
  rep.log_mixing_bound_theoretical = rep.log_product_theoretical + tail;
  return rep;
}

/// Constants of the polynomial mixing bound n^c, c = 80 C_a^2,
/// C_a = (64/alpha)(1/eps + 1)^2, alpha = (1 + eps) alpha*.
struct Theorem1Bound {
  double epsilon = 0.0;
  double alpha = 0.0;
  double c_alpha = 0.0;
  double exponent = 0.0;       // c
  double c_bound = 0.0;        // C = 64 (1/eps + 1)^2 Delta / q
  int k0 = 0;                  // ceil(2 C)
  double log_bound = 0.0;      // c ln n
  double log_product_cap = 0.0;        // 74 C_a^2 ln n
  double log_product_formula = 0.0;    // ln prod (1 - l_s)^{-1} from the l_s choice
  double log_mixing_formula = 0.0;     // ln(L n^2 ln(4q))
  bool alpha_below_two = true;
  bool q_at_most_two_delta = true;
};

inline Theorem1Bound mixing_bound_theorem1(int n, int delta, int q, double epsilon) {
  if (n < 1 || delta < 1 || q < 1) throw Error(ErrorCode::BadParams, "n, Delta and q must be positive");
  const auto p = region_params(epsilon);
  if (static_cast<double>(q) < p.alpha * delta + 1.0)
    throw Error(ErrorCode::BadParams, "q must be at least (1+eps) alpha* Delta + 1");
  Theorem1Bound b;
  b.epsilon = epsilon;
  b.alpha = p.alpha;
  const double k = 1.0 / epsilon + 1.0;
  b.c_alpha = 64.0 / p.alpha * k * k;
  b.exponent = 80.0 * b.c_alpha * b.c_alpha;
  b.c_bound = 64.0 * k * k * delta / q;
  b.k0 = static_cast<int>(std::ceil(2.0 * b.c_bound));
  const double ln_n = std::log(static_cast<double>(n));
  b.log_bound = b.exponent * ln_n;
  b.log_product_cap = 74.0 * b.c_alpha * b.c_alpha * ln_n;
  for (int s = 0; s <= n - 2; ++s) b.log_product_formula -= local_expansion_log1m(n, s, q, b.c_bound);
  b.log_mixing_formula = b.log_product_formula + 2.0 * ln_n + std::log(std::log(4.0 * q));
  b.alpha_below_two = p.alpha < 2.0;
  b.q_at_most_two_delta = q <= 2 * delta;
  return b;
}

}  // namespace scol

#endif  // SCOL_SPECTRAL_HPP
