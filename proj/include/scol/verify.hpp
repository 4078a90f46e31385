#ifndef SCOL_VERIFY_HPP
#define SCOL_VERIFY_HPP

// Numeric checks of the influence identities and inequalities on concrete
// instances. Every check yields a flat list of reports with value, bound,
// residual and a pass flag.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scol/error.hpp"
#include "scol/graph.hpp"
#include "scol/influence.hpp"
#include "scol/oracle.hpp"
#include "scol/parallel.hpp"
#include "scol/region.hpp"
#include "scol/rng.hpp"
#include "scol/spectral.hpp"

namespace scol {

struct Tolerances {
  double identity = 1e-12;
  double inequality = 1e-9;
  double spectral = 1e-8;
};

struct InfluenceReport {
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
  double residual = 0.0;  // value - bound, or |value - bound| for identities
  bool identity = false;
  bool pass = false;
  nlohmann::json context = nlohmann::json::object();
};

inline InfluenceReport inequality_report(std::string quantity, double value, double bound, double tol,
                                         nlohmann::json context = nlohmann::json::object()) {
  InfluenceReport r;
  r.quantity = std::move(quantity);
  r.value = value;
  r.bound = bound;
  r.residual = value - bound;
  r.pass = value <= bound + tol;
  r.context = std::move(context);
  return r;
}

inline InfluenceReport identity_report(std::string quantity, double value, double expected, double tol,
                                       nlohmann::json context = nlohmann::json::object()) {
  InfluenceReport r;
  r.quantity = std::move(quantity);
  r.value = value;
  r.bound = expected;
  r.residual = std::abs(value - expected);
  r.identity = true;
  r.pass = r.residual <= tol;
  r.context = std::move(context);
  return r;
}

/// Passes when value >= floor - tol; residual = floor - value.
inline InfluenceReport lower_bound_report(std::string quantity, double value, double floor, double tol,
                                          nlohmann::json context = nlohmann::json::object()) {
  InfluenceReport r;
  r.quantity = std::move(quantity);
  r.value = value;
  r.bound = floor;
  r.residual = floor - value;
  r.pass = value >= floor - tol;
  r.context = std::move(context);
  return r;
}

inline void to_json(nlohmann::json& j, const InfluenceReport& r) {
  j = nlohmann::json{{"quantity", r.quantity}, {"value", r.value},       {"bound", r.bound},
                     {"residual", r.residual}, {"identity", r.identity}, {"pass", r.pass},
                     {"context", r.context}};
}

struct CheckResult {
  std::string check;
  std::vector<InfluenceReport> reports;
  std::vector<std::string> warnings;
  std::size_t candidates = 0;  // tuples before the budget cap
  bool sampled = false;
  std::size_t skipped = 0;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.pass; }));
  }
  bool pass() const { return failures() == 0; }

  /// Failing report with the largest residual, else the tightest passing one.
  const InfluenceReport* worst() const {
    const InfluenceReport* best = nullptr;
    for (const auto& r : reports) {
      if (!best || (!r.pass && best->pass) || (r.pass == best->pass && r.residual > best->residual)) best = &r;
    }
    return best;
  }

  std::string summary() const {
    const std::size_t k = reports.size();
    if (pass()) return "PASS " + std::to_string(k) + "/" + std::to_string(k);
    const auto* w = worst();
    return "FAIL " + std::to_string(failures()) + "/" + std::to_string(k) + " (worst " + w->quantity +
           ": value " + nlohmann::json(w->value).dump() + ", bound " + nlohmann::json(w->bound).dump() + ")";
  }

  void absorb(CheckResult other) {
    for (auto& r : other.reports) reports.push_back(std::move(r));
    for (auto& w : other.warnings) warnings.push_back(std::move(w));
    candidates += other.candidates;
    sampled = sampled || other.sampled;
    skipped += other.skipped;
  }
};

inline void to_json(nlohmann::json& j, const CheckResult& c) {
  j = nlohmann::json{{"check", c.check},       {"summary", c.summary()}, {"pass", c.pass()},
                     {"reports", c.reports},   {"warnings", c.warnings}, {"candidates", c.candidates},
                     {"sampled", c.sampled},   {"skipped", c.skipped}};
}

struct VerifyOptions {
  double epsilon = 0.1;
  int delta = 0;  // 0: max(3, max degree)
  std::size_t budget = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  OracleOptions oracle;
  Tolerances tol;
  bool include_derived = true;

  int resolved_delta(const Graph& g) const { return delta > 0 ? delta : std::max(3, g.max_degree()); }
};

/// Indices 0..count-1, or a seeded sample of `budget` of them in ascending order.
inline std::vector<std::size_t> budgeted_indices(std::size_t count, std::size_t budget, std::uint64_t seed,
                                                 bool* sampled = nullptr) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const bool cut = count > budget;
  if (sampled) *sampled = cut;
  if (!cut) return idx;
  Xoshiro256 rng(seed);
  rng.shuffle(idx);
  idx.resize(budget);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline double influence_constant(double epsilon) { return 1.0 / epsilon + 1.0; }

/// 64 (1/eps + 1)^2 Delta / q
inline double eigenvalue_bound(double epsilon, int delta, int q) {
  const double c = influence_constant(epsilon);
  return 64.0 * c * c * delta / q;
}

// Hypothesis gates ------------------------------------------------------------

namespace detail {

[[noreturn]] inline void violated(const std::string& what) { throw Error(ErrorCode::HypothesisViolated, what); }

inline void need_triangle_free(const ListColoringInstance& inst) {
  if (!is_triangle_free(inst.graph())) violated("triangle-free");
}

inline bool delta_q(const ListColoringInstance& inst, int delta) {
  try {
    return is_delta_q_instance(inst, delta, inst.q());
  } catch (const Error&) {
    return false;
  }
}

inline void need_delta_q(const ListColoringInstance& inst, int delta) {
  if (!delta_q(inst, delta))
    violated("(Delta,q)-instance with Delta=" + std::to_string(delta) + ", q=" + std::to_string(inst.q()));
}

inline void need_region(const ListColoringInstance& inst, int delta, double epsilon) {
  if (!in_region(delta, inst.q(), epsilon))
    violated("(Delta,q) in region for epsilon=" + nlohmann::json(epsilon).dump() + " (q >= " +
             nlohmann::json(region_params(epsilon).threshold(delta)).dump() + ")");
}

}  // namespace detail

/// Throws HypothesisViolated when `check` does not apply to this instance.
inline void require_hypotheses(const std::string& check, const ListColoringInstance& inst, const VerifyOptions& opt) {
  const int delta = opt.resolved_delta(inst.graph());
  if (check == "lemma18" || check == "thm19" || check == "thm-biased") {
    detail::need_triangle_free(inst);
    detail::need_delta_q(inst, delta);
    detail::need_region(inst, delta, opt.epsilon);
  } else if (check == "lemma25") {
    detail::need_triangle_free(inst);
    detail::need_delta_q(inst, delta);
  } else if (check == "lemma22") {
    detail::need_delta_q(inst, delta);
  } else if (check == "thm9") {
    detail::need_triangle_free(inst);
    detail::need_delta_q(inst, delta);
    if (!above_eigenvalue_threshold(delta, inst.q(), opt.epsilon))
      detail::violated("q >= (1+epsilon) alpha* Delta + 1 (needs q >= " +
                       nlohmann::json(region_params(opt.epsilon).alpha * delta + 1.0).dump() + ")");
  } else if (check == "thm8") {
    if (!inst.glauber_valid()) detail::violated("|L(v)| >= deg(v) + 2 at every vertex");
  }
}

// Pointwise influence checks --------------------------------------------------

namespace detail {

inline std::vector<SourceInfluence> all_sources(const Distribution& d, int q, unsigned threads) {
  std::vector<std::optional<SourceInfluence>> slots(static_cast<std::size_t>(d.size()));
  parallel_for(slots.size(), threads, [&](std::size_t v) { slots[v].emplace(source_influence(d, static_cast<Vertex>(v), q)); });
  std::vector<SourceInfluence> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace detail

/// |M((v,i),(w,k))| <= I[v -> (w,k)]; one report per (v,i), worst (w,k).
inline CheckResult verify_influence_domination(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "obs11";
  const auto& inst = d.instance();
  const auto m = influence_matrix(d);
  const auto src = detail::all_sources(d, inst.q(), opt.threads);
  const auto& idx = m.index;
  out.candidates = idx.size();
  for (std::size_t a : budgeted_indices(idx.size(), opt.budget, opt.seed, &out.sampled)) {
    const auto [v, i] = idx.pair(a);
    double worst = -std::numeric_limits<double>::infinity(), mv = 0.0, iv = 0.0;
    Vertex ww = v;
    Color wk = 0;
    for (int w = 0; w < inst.size(); ++w) {
      if (w == v) continue;
      for (Color k : inst.list(w)) {
        const double entry = std::abs(m.at(v, i, w, k));
        const double bound = src[v].max(w, k);
        if (entry - bound > worst) {
          worst = entry - bound;
          mv = entry;
          iv = bound;
          ww = w;
          wk = k;
        }
      }
    }
    if (ww == v) continue;
    out.reports.push_back(
        inequality_report("influence-entry", mv, iv, opt.tol.inequality, {{"v", v}, {"i", i}, {"w", ww}, {"k", wk}}));
  }
  return out;
}

/// J(v->(w,k)) <= (1 - P(v)) Ihat + P(v) I; one report per ordered (v,w).
inline CheckResult verify_jhat_bound(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "jhat";
  const auto& inst = d.instance();
  const int n = inst.size();
  const auto src = detail::all_sources(d, inst.q(), opt.threads);
  for (int v = 0; v < n; ++v) {
    const double pv = d.p_max(v);
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      double worst = -std::numeric_limits<double>::infinity(), jv = 0.0, bv = 0.0;
      Color wk = 0;
      for (Color k : inst.list(w)) {
        const double j = src[v].jhat(w, k);
        const double b = (1.0 - pv) * src[v].biased(w, k) + pv * src[v].max(w, k);
        if (j - b > worst) {
          worst = j - b;
          jv = j;
          bv = b;
          wk = k;
        }
      }
      out.reports.push_back(
          inequality_report("jhat", jv, bv, opt.tol.inequality, {{"v", v}, {"w", w}, {"k", wk}, {"p_v", pv}}));
    }
  }
  out.candidates = out.reports.size();
  return out;
}

// Recursion identity ------------------------------------------------------------

struct RecursionTerm {
  Vertex w = 0;
  Color k = 0;
  double lhs = 0.0;  // P(k | i) - P(k | j)
  double rhs = 0.0;
};

struct RecursionIdentity {
  std::vector<RecursionTerm> terms;
  std::vector<std::string> warnings;
  bool skipped = false;
};

/// Both sides of the one-step recursion for pinned colors i != j at v, for
/// every target (w,k) with w != v. On the derived instance the same-vertex
/// entry at (u,c),(u,k) is [c = k] - P(sigma_u = k) unless `zero_self_block`.
inline RecursionIdentity recursion_identity(const Distribution& d, Vertex v, Color i, Color j,
                                            const OracleOptions& oracle = {}, bool zero_self_block = false) {
  const auto& inst = d.instance();
  const Graph& g = inst.graph();
  const int n = inst.size();
  if (i == j || !inst.in_list(v, i) || !inst.in_list(v, j))
    throw Error(ErrorCode::BadParams, "pinned colors must be distinct members of L(v)");
  RecursionIdentity out;
  if (d.count(v, i) == 0 || d.count(v, j) == 0) {
    out.skipped = true;
    out.warnings.push_back("v=" + std::to_string(v) + ": a pinned color has zero probability");
    return out;
  }
  std::vector<double> rhs(static_cast<std::size_t>(n) * (inst.q() + 1), 0.0);
  auto slot = [&](Vertex w, Color k) { return static_cast<std::size_t>(w) * (inst.q() + 1) + k; };
  for (Vertex u : g.neighbors(v)) {
    std::optional<Distribution> dd;
    try {
      dd.emplace(derive_instance(inst, v, u, i, j), oracle);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsatisfiable && e.code() != ErrorCode::EmptyList) throw;
      out.skipped = true;
      out.warnings.push_back("v=" + std::to_string(v) + ", u=" + std::to_string(u) + ": derived instance " + e.detail());
      return out;
    }
    const Vertex uu = index_after_removal(u, v);
    for (const Color c : {i, j}) {
      const std::uint64_t hit = dd->count(uu, c);
      if (hit == 0) continue;
      if (hit == dd->total()) {
        out.skipped = true;
        out.warnings.push_back("v=" + std::to_string(v) + ", u=" + std::to_string(u) +
                               ": DegenerateMarginal, derived instance forces color " + std::to_string(c));
        return out;
      }
      const double r = static_cast<double>(hit) / static_cast<double>(dd->total() - hit);
      const double sign = c == j ? 1.0 : -1.0;
      for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        const Vertex ww = index_after_removal(w, v);
        if (ww == uu && zero_self_block) continue;
        for (Color k : inst.list(w)) {
          const double entry = dd->conditional(uu, c, ww, k) - dd->marginal(ww, k);
          rhs[slot(w, k)] += sign * r * entry;
        }
      }
    }
  }
  for (int w = 0; w < n; ++w) {
    if (w == v) continue;
    for (Color k : inst.list(w))
      out.terms.push_back({w, k, d.conditional(v, i, w, k) - d.conditional(v, j, w, k), rhs[slot(w, k)]});
  }
  return out;
}

/// Recursion identity over (v, i, j) triples; each report is the worst target.
/// Orientation: "i-minus-j" when LHS = RHS everywhere, "j-minus-i" when
/// LHS = -RHS everywhere, "both" when every term is zero, else "mixed".
inline CheckResult verify_recursion_identity(const Distribution& d, const VerifyOptions& opt,
                                             bool zero_self_block = false) {
  CheckResult out;
  out.check = "lemma14";
  const auto& inst = d.instance();
  struct Triple {
    Vertex v;
    Color i, j;
  };
  std::vector<Triple> triples;
  for (int v = 0; v < inst.size(); ++v)
    for (Color i : inst.list(v))
      for (Color j : inst.list(v))
        if (i != j) triples.push_back({v, i, j});
  out.candidates = triples.size();
  const auto pick = budgeted_indices(triples.size(), opt.budget, opt.seed, &out.sampled);
  std::vector<std::optional<RecursionIdentity>> slots(pick.size());
  OracleOptions inner = opt.oracle;
  inner.threads = 1;
  parallel_for(pick.size(), opt.threads, [&](std::size_t t) {
    const auto& tr = triples[pick[t]];
    slots[t].emplace(recursion_identity(d, tr.v, tr.i, tr.j, inner, zero_self_block));
  });
  const double tol = opt.tol.identity;
  for (std::size_t t = 0; t < pick.size(); ++t) {
    const auto& tr = triples[pick[t]];
    auto& ri = *slots[t];
    for (auto& w : ri.warnings) out.warnings.push_back(std::move(w));
    if (ri.skipped) {
      ++out.skipped;
      continue;
    }
    bool plus = true, minus = true;
    double worst = 0.0, oriented = 0.0;
    RecursionTerm at{};
    for (const auto& term : ri.terms) {
      plus = plus && std::abs(term.lhs - term.rhs) <= tol;
      minus = minus && std::abs(term.lhs + term.rhs) <= tol;
      oriented = std::max(oriented, std::abs(term.lhs - term.rhs));
      const double gap = std::abs(std::abs(term.lhs) - std::abs(term.rhs));
      if (gap >= worst) {
        worst = gap;
        at = term;
      }
    }
    const char* orientation = plus && minus ? "both" : plus ? "i-minus-j" : minus ? "j-minus-i" : "mixed";
    out.reports.push_back(identity_report("recursion-identity", std::abs(at.lhs), std::abs(at.rhs), tol,
                                          {{"v", tr.v},
                                           {"i", tr.i},
                                           {"j", tr.j},
                                           {"w", at.w},
                                           {"k", at.k},
                                           {"lhs", at.lhs},
                                           {"rhs", at.rhs},
                                           {"oriented_residual", oriented},
                                           {"orientation", orientation}}));
  }
  return out;
}

// Aggregate recursions ------------------------------------------------------------

namespace detail {

struct NeighborRecursion {
  Vertex u = 0;        // in G
  Vertex derived = 0;  // in G_v
  double ratio = 0.0;  // R_{G_v, L_v}(u)
  int degree = 0;      // deg_{G_v}(u)
  double total_max = 0.0;
  double total_biased = 0.0;
  std::optional<SourceInfluence> source;
};

struct RecursionData {
  std::vector<NeighborRecursion> neighbors;
  std::size_t members = 0;
};

/// Derived collection L_v, its distributions and per-neighbor totals.
inline RecursionData recursion_data(const InstanceCollection& coll, Vertex v, int q, const OracleOptions& oracle) {
  const auto derived = derive_collection(coll, v);
  const auto dists = analyze_collection(derived, oracle);
  RecursionData out;
  out.members = dists.size();
  for (Vertex u : coll.graph().neighbors(v)) {
    NeighborRecursion nr;
    nr.u = u;
    nr.derived = index_after_removal(u, v);
    nr.ratio = ratio_R(dists, nr.derived);
    nr.degree = derived.graph().degree(nr.derived);
    nr.source.emplace(source_influence(dists, nr.derived, q));
    nr.total_max = total_from(*nr.source, derived.graph(), nr.derived, false);
    nr.total_biased = total_from(*nr.source, derived.graph(), nr.derived, true);
    out.neighbors.push_back(std::move(nr));
  }
  return out;
}

inline bool skippable(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Unsatisfiable:
    case ErrorCode::EmptyList:
    case ErrorCode::DegenerateMarginal:
    case ErrorCode::ZeroConditioning:
      return true;
    default:
      return false;
  }
}

}  // namespace detail

/// Aggregate and pointwise influence recursions at each non-isolated v:
///   I*(v) <= max_u R(u) (deg(u) I*_v(u) + q)
///   I[v->(w,k)] <= sum_u R(u) I_v[u->(w,k)]
/// and with `biased`
///   Ihat*(v) <= max_u R(u) [deg(u) Ihat*_v(u) + R(u) (deg(u) I*_v(u) + q)]
///   Ihat[v->(w,k)] <= sum_u R(u) (Ihat_v[u->(w,k)] + R(u) I_v[u->(w,k)]).
inline CheckResult verify_recursion_bounds(const InstanceCollection& coll, const VerifyOptions& opt, bool biased) {
  CheckResult out;
  out.check = biased ? "biased" : "lemma17";
  const Graph& g = coll.graph();
  const int n = g.size();
  const int q = coll.q();
  const auto dists = analyze_collection(coll, opt.oracle);
  std::vector<Vertex> sources;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) > 0) sources.push_back(v);
  out.candidates = sources.size();
  const auto pick = budgeted_indices(sources.size(), opt.budget, opt.seed, &out.sampled);
  struct Slot {
    std::vector<InfluenceReport> reports;
    std::string warning;
  };
  std::vector<Slot> slots(pick.size());
  OracleOptions inner = opt.oracle;
  inner.threads = 1;
  const double tol = opt.tol.inequality;
  parallel_for(pick.size(), opt.threads, [&](std::size_t t) {
    const Vertex v = sources[pick[t]];
    detail::RecursionData rd;
    SourceInfluence top(1, 1);
    try {
      rd = detail::recursion_data(coll, v, q, inner);
      top = source_influence(dists, v, q);
    } catch (const Error& e) {
      if (!detail::skippable(e)) throw;
      slots[t].warning = "v=" + std::to_string(v) + " skipped: " + std::string(e.what());
      return;
    }
    const double lhs_total = total_from(top, g, v, biased);
    double rhs_total = 0.0;
    Vertex arg = rd.neighbors.front().u;
    for (const auto& nr : rd.neighbors) {
      const double base = nr.ratio * (nr.degree * nr.total_max + q);
      const double val = biased ? nr.ratio * (nr.degree * nr.total_biased + base) : base;
      if (val > rhs_total) {
        rhs_total = val;
        arg = nr.u;
      }
    }
    nlohmann::json ctx{{"v", v}, {"argmax_u", arg}, {"derived_members", rd.members}};
    slots[t].reports.push_back(
        inequality_report(biased ? "biased-total-recursion" : "total-recursion", lhs_total, rhs_total, tol, ctx));

    double worst = -std::numeric_limits<double>::infinity(), lv = 0.0, rv = 0.0;
    Vertex ww = 0;
    Color wk = 0;
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      const Vertex wd = index_after_removal(w, v);
      for (Color k = 1; k <= q; ++k) {
        const double l = biased ? top.biased(w, k) : top.max(w, k);
        double r = 0.0;
        for (const auto& nr : rd.neighbors) {
          const double mx = nr.source->max(wd, k);
          r += biased ? nr.ratio * (nr.source->biased(wd, k) + nr.ratio * mx) : nr.ratio * mx;
        }
        if (l - r > worst) {
          worst = l - r;
          lv = l;
          rv = r;
          ww = w;
          wk = k;
        }
      }
    }
    if (n > 1)
      slots[t].reports.push_back(inequality_report(biased ? "biased-pointwise-recursion" : "pointwise-recursion", lv,
                                                   rv, tol, {{"v", v}, {"w", ww}, {"k", wk}}));
  });
  for (auto& s : slots) {
    if (!s.warning.empty()) {
      out.warnings.push_back(std::move(s.warning));
      ++out.skipped;
    }
    for (auto& r : s.reports) out.reports.push_back(std::move(r));
  }
  return out;
}

// Marginal-ratio bounds -------------------------------------------------------

namespace detail {

/// Distributions the ratio bounds are applied to: the instance and, when
/// requested, every member of each derived collection L_v.
struct LabeledDistribution {
  nlohmann::json label;
  Distribution dist;
};

inline std::vector<LabeledDistribution> ratio_targets(const Distribution& d, const VerifyOptions& opt,
                                                      std::vector<std::string>& warnings) {
  std::vector<LabeledDistribution> out;
  out.push_back({nlohmann::json{{"instance", "input"}}, d});
  if (!opt.include_derived) return out;
  const InstanceCollection single(d.instance());
  for (int v = 0; v < d.size(); ++v) {
    if (d.instance().graph().degree(v) == 0) continue;
    try {
      const auto coll = derive_collection(single, v);
      auto dists = analyze_collection(coll, opt.oracle);
      for (std::size_t t = 0; t < dists.size(); ++t)
        out.push_back({nlohmann::json{{"instance", "derived"}, {"removed", v}, {"member", t}}, std::move(dists[t])});
    } catch (const Error& e) {
      if (!skippable(e)) throw;
      warnings.push_back("derived collection at v=" + std::to_string(v) + " skipped: " + e.what());
    }
  }
  return out;
}

inline nlohmann::json with(nlohmann::json base, const nlohmann::json& extra) {
  base.update(extra);
  return base;
}

}  // namespace detail

/// Ratio bound min{1/((1+eps) deg(u)), 4/q} at vertices of degree <= Delta-1
/// (4/q when deg(u) = 0), and the chain
///   P(sigma_u = c) <= 1/(|L(u)| - deg(u)) <= 1/(q - Delta).
inline CheckResult verify_ratio_bounds(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "lemma18";
  const int delta = opt.resolved_delta(d.instance().graph());
  const double tol = opt.tol.inequality;
  for (const auto& [label, dist] : detail::ratio_targets(d, opt, out.warnings)) {
    const auto& inst = dist.instance();
    const int q = inst.q();
    for (int u = 0; u < inst.size(); ++u) {
      const int deg = inst.graph().degree(u);
      const nlohmann::json ctx = detail::with(label, {{"u", u}, {"deg", deg}});
      if (deg <= delta - 1) {
        try {
          double worst = 0.0;
          Color at = inst.list(u).front();
          for (Color c : inst.list(u)) {
            const double r = dist.ratio(u, c);
            if (r > worst) worst = r, at = c;
          }
          const double bound = deg == 0 ? 4.0 / q : std::min(1.0 / ((1.0 + opt.epsilon) * deg), 4.0 / q);
          out.reports.push_back(
              inequality_report("marginal-ratio", worst, bound, tol, detail::with(ctx, {{"c", at}})));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegenerateMarginal) throw;
          out.warnings.push_back(std::string(e.what()));
          ++out.skipped;
        }
      }
      const int room = inst.list_size(u) - deg;
      if (room > 0) {
        out.reports.push_back(inequality_report("marginal-crude", dist.p_max(u), 1.0 / room, tol, ctx));
        if (q > delta) out.reports.push_back(inequality_report("crude-chain", 1.0 / room, 1.0 / (q - delta), tol, ctx));
      }
    }
  }
  out.candidates = out.reports.size();
  return out;
}

/// ratio(u,c) <= 1/(Phi(Delta,q) deg(u)) for 1 <= deg(u) <= Delta-1.
inline CheckResult verify_phi_ratio_bound(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "lemma25";
  const int delta = opt.resolved_delta(d.instance().graph());
  const double f = phi(delta, d.instance().q());
  for (const auto& [label, dist] : detail::ratio_targets(d, opt, out.warnings)) {
    const auto& inst = dist.instance();
    for (int u = 0; u < inst.size(); ++u) {
      const int deg = inst.graph().degree(u);
      if (deg < 1 || deg > delta - 1) continue;
      try {
        double worst = 0.0;
        Color at = inst.list(u).front();
        for (Color c : inst.list(u)) {
          const double r = dist.ratio(u, c);
          if (r > worst) worst = r, at = c;
        }
        out.reports.push_back(inequality_report("phi-ratio", worst, 1.0 / (f * deg), opt.tol.inequality,
                                                detail::with(label, {{"u", u}, {"deg", deg}, {"c", at}, {"phi", f}})));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateMarginal) throw;
        out.warnings.push_back(std::string(e.what()));
        ++out.skipped;
      }
    }
  }
  out.candidates = out.reports.size();
  return out;
}

/// Phi(Delta,q) >= 1 + (1 + 1/alpha*) eps on Delta in [3,50],
/// q in [ceil(alpha Delta + beta), 3 Delta]; one report per Delta (smallest Phi).
inline CheckResult verify_phi_region(double epsilon, double tol = 1e-9) {
  CheckResult out;
  out.check = "lemma26";
  const auto p = region_params(epsilon);
  const double floor_value = phi_region_bound(epsilon);
  for (int delta = 3; delta <= 50; ++delta) {
    const int lo = static_cast<int>(std::ceil(p.threshold(delta)));
    double worst = std::numeric_limits<double>::infinity();
    int at = 0;
    for (int q = std::max(lo, delta + 1); q <= 3 * delta; ++q) {
      ++out.candidates;
      const double f = phi(delta, q);
      if (f < worst) worst = f, at = q;
    }
    if (at == 0) continue;
    out.reports.push_back(lower_bound_report("phi-region", worst, floor_value, tol,
                                             {{"delta", delta}, {"q", at}}));
  }
  if (out.reports.empty())
    out.warnings.push_back("grid is empty for epsilon=" + nlohmann::json(epsilon).dump() + ": the check is vacuous");
  return out;
}

// Row sums and the global bounds ---------------------------------------------

/// Row L1 sums of M against 2 deg(v) (Ihat*(v) + P(v) I*(v)) and, inside the
/// region on triangle-free input, against 64 (1/eps + 1)^2 Delta / q. Also
/// the diagonal-column domination inside each row.
inline CheckResult verify_row_sums(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "lemma22";
  const auto& inst = d.instance();
  const Graph& g = inst.graph();
  const int delta = opt.resolved_delta(g);
  const int q = inst.q();
  const double tol = opt.tol.inequality;
  const auto m = influence_matrix(d);
  const auto src = detail::all_sources(d, q, opt.threads);
  const bool global = is_triangle_free(g) && in_region(delta, q, opt.epsilon);
  if (!global)
    out.warnings.push_back("global row bound skipped: instance is not triangle-free or (Delta,q) is outside the region");
  const double cap = eigenvalue_bound(opt.epsilon, delta, q);
  for (std::size_t a = 0; a < m.index.size(); ++a) {
    const auto [v, i] = m.index.pair(a);
    const int deg = g.degree(v);
    const double row = row_abs_sum(m, v, i);
    const double tot = total_from(src[v], g, v, false);
    const double tot_b = total_from(src[v], g, v, true);
    const double pv = d.p_max(v);
    const nlohmann::json ctx{{"v", v}, {"i", i}};
    out.reports.push_back(inequality_report("row-sum", row, 2.0 * deg * (tot_b + pv * tot), tol,
                                            detail::with(ctx, {{"total_biased", tot_b}, {"total", tot}, {"p_v", pv}})));
    if (global) out.reports.push_back(inequality_report("row-sum-global", row, cap, tol, ctx));
    double diag = 0.0, off = 0.0;
    for (int w = 0; w < inst.size(); ++w) {
      if (w == v) continue;
      for (Color k : inst.list(w)) (k == i ? diag : off) += std::abs(m.at(v, i, w, k));
    }
    out.reports.push_back(inequality_report("diagonal-domination", diag, off, tol, ctx));
  }
  out.candidates = out.reports.size();
  return out;
}

/// lambda1(M) <= 64 (1/eps + 1)^2 Delta / q, with a power-iteration cross-check.
inline CheckResult verify_top_eigenvalue(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "thm9";
  const auto& inst = d.instance();
  const int delta = opt.resolved_delta(inst.graph());
  const auto m = influence_matrix(d);
  const auto top = top_eigenvalue_influence(m, opt.tol.spectral);
  const auto pi = power_iteration_lambda1(m.entries);
  if (!pi.converged || std::abs(pi.value - top.lambda1) > 1e-6)
    out.warnings.push_back("power iteration disagrees with the dense solve: " + nlohmann::json(pi.value).dump());
  out.reports.push_back(inequality_report("top-eigenvalue", top.lambda1, eigenvalue_bound(opt.epsilon, delta, inst.q()),
                                          opt.tol.inequality,
                                          {{"max_imag", top.max_imag},
                                           {"power_iteration", pi.value},
                                           {"delta", delta},
                                           {"q", inst.q()},
                                           {"epsilon", opt.epsilon}}));
  out.candidates = 1;
  return out;
}

/// I*(v) <= 4 (1/eps + 1), or with `biased` Ihat*(v) <= (16/q)(1/eps + 1)^2, on
/// the instance and on each derived collection (G_v, L_v).
inline CheckResult verify_total_bound(const Distribution& d, const VerifyOptions& opt, bool biased) {
  CheckResult out;
  out.check = biased ? "thm-biased" : "thm19";
  const auto& inst = d.instance();
  const Graph& g = inst.graph();
  const int q = inst.q();
  const double c = influence_constant(opt.epsilon);
  const double bound = biased ? 16.0 / q * c * c : 4.0 * c;
  const char* name = biased ? "total-biased-influence" : "total-influence";
  const double tol = opt.tol.inequality;
  const auto src = detail::all_sources(d, q, opt.threads);
  for (int v = 0; v < inst.size(); ++v)
    out.reports.push_back(inequality_report(name, total_from(src[v], g, v, biased), bound, tol,
                                            {{"instance", "input"}, {"v", v}}));
  if (opt.include_derived) {
    const InstanceCollection single(inst);
    for (int v = 0; v < inst.size(); ++v) {
      if (g.degree(v) == 0) continue;
      try {
        const auto coll = derive_collection(single, v);
        const auto dists = analyze_collection(coll, opt.oracle);
        for (int u = 0; u < coll.graph().size(); ++u) {
          const auto s = source_influence(dists, u, q);
          out.reports.push_back(inequality_report(name, total_from(s, coll.graph(), u, biased), bound, tol,
                                                  {{"instance", "derived"}, {"removed", v}, {"u", u}}));
        }
      } catch (const Error& e) {
        if (!detail::skippable(e)) throw;
        out.warnings.push_back("derived collection at v=" + std::to_string(v) + " skipped: " + e.what());
        ++out.skipped;
      }
    }
  }
  out.candidates = out.reports.size();
  return out;
}

/// Walk identity lambda2(P) = lambda1(M)/(n-1) with null-space and spectrum checks.
inline CheckResult verify_walk_identity(const Distribution& d, const VerifyOptions& opt) {
  CheckResult out;
  out.check = "thm8";
  const auto r = verify_theorem8(d, opt.tol.spectral);
  const nlohmann::json ctx{{"n", r.n}, {"pairs", r.pairs}, {"eigen_method", r.eigen_method}};
  const double scaled = r.n > 1 ? r.lambda1_m / (r.n - 1) : 0.0;
  out.reports.push_back(identity_report("walk-identity", r.lambda2_walk, scaled, opt.tol.spectral,
                                        detail::with(ctx, {{"lambda1_m", r.lambda1_m}})));
  out.reports.push_back(inequality_report("max-imaginary-part", r.max_imag, opt.tol.spectral, 0.0, ctx));
  out.reports.push_back(identity_report("null-ones", r.null_residual_ones, 0.0, opt.tol.identity, ctx));
  out.reports.push_back(identity_report("null-vertex", r.null_residual_vertex, 0.0, opt.tol.identity, ctx));
  out.reports.push_back(identity_report("reversibility", r.reversibility, 0.0, opt.tol.identity, ctx));
  out.reports.push_back(lower_bound_report("minus-multiplicity", static_cast<double>(r.minus_multiplicity),
                                           static_cast<double>(r.n - 1), 0.0, ctx));
  out.candidates = out.reports.size();
  return out;
}

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"obs11", "lemma14", "lemma17", "lemma18", "lemma22", "lemma25",
                                              "lemma26", "thm9", "thm19", "biased", "thm-biased", "thm8"};
  return names;
}

/// Runs one named check after its hypothesis gate.
inline CheckResult run_check(const std::string& check, const ListColoringInstance& inst, const VerifyOptions& opt) {
  if (std::find(check_names().begin(), check_names().end(), check) == check_names().end())
    throw Error(ErrorCode::BadParams, "unknown check '" + check + "'");
  if (check == "lemma26") return verify_phi_region(opt.epsilon, opt.tol.inequality);
  require_hypotheses(check, inst, opt);
  if (check == "lemma17" || check == "biased") {
    auto r = verify_recursion_bounds(InstanceCollection(inst), opt, check == "biased");
    if (check == "biased") {
      const Distribution d(inst, opt.oracle);
      auto jk = verify_jhat_bound(d, opt);
      jk.check = r.check;
      r.absorb(std::move(jk));
    }
    return r;
  }
  const Distribution d(inst, opt.oracle);
  if (check == "obs11") return verify_influence_domination(d, opt);
  if (check == "lemma14") return verify_recursion_identity(d, opt);
  if (check == "lemma18") return verify_ratio_bounds(d, opt);
  if (check == "lemma22") return verify_row_sums(d, opt);
  if (check == "lemma25") return verify_phi_ratio_bound(d, opt);
  if (check == "thm9") return verify_top_eigenvalue(d, opt);
  if (check == "thm19") return verify_total_bound(d, opt, false);
  if (check == "thm-biased") return verify_total_bound(d, opt, true);
  return verify_walk_identity(d, opt);
}

}  // namespace scol

#endif  // SCOL_VERIFY_HPP
