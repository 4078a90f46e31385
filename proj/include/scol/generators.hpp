#ifndef SCOL_GENERATORS_HPP
#define SCOL_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "scol/error.hpp"
#include "scol/graph.hpp"
#include "scol/rng.hpp"

namespace scol::gen {

/// Star on delta + 1 vertices; the center is vertex 0.
inline Graph star(int delta) {
  if (delta < 1) throw Error(ErrorCode::BadParams, "star needs at least one leaf");
  std::vector<Edge> e;
  for (int leaf = 1; leaf <= delta; ++leaf) e.emplace_back(0, leaf);
  return Graph::from_edges(delta + 1, e);
}

inline Graph path(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "path needs at least one vertex");
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

/// cycle(3) is a triangle; every longer cycle is triangle-free.
inline Graph cycle(int n) {
  if (n < 3) throw Error(ErrorCode::BadParams, "cycle needs at least three vertices");
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return Graph::from_edges(n, e);
}

/// r x c lattice, vertex (i, j) is i * c + j.
inline Graph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::BadParams, "grid sides must be positive");
  std::vector<Edge> e;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) e.emplace_back(v, v + 1);
      if (i + 1 < rows) e.emplace_back(v, v + cols);
    }
  return Graph::from_edges(rows * cols, e);
}

/// Sides 0..a-1 and a..a+b-1.
inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw Error(ErrorCode::BadParams, "bipartite sides must be positive");
  std::vector<Edge> e;
  for (int x = 0; x < a; ++x)
    for (int y = 0; y < b; ++y) e.emplace_back(x, a + y);
  return Graph::from_edges(a + b, e);
}

/// Each cross pair independently with probability p, pairs visited in
/// lexicographic order.
inline Graph random_bipartite(int a, int b, double p, std::uint64_t seed) {
  if (a < 1 || b < 1 || p < 0.0 || p > 1.0) throw Error(ErrorCode::BadParams, "bad bipartite parameters");
  Xoshiro256 rng(seed);
  std::vector<Edge> e;
  for (int x = 0; x < a; ++x)
    for (int y = 0; y < b; ++y)
      if (rng.uniform01() < p) e.emplace_back(x, a + y);
  return Graph::from_edges(a + b, e);
}

struct TriangleFreeResult {
  Graph graph;
  std::size_t requested = 0;
  std::size_t added = 0;
};

/// Greedy rejection: candidate edges in seeded random order, accepted when
/// both ends are below the degree cap and share no neighbor. Small graphs
/// shuffle every pair; large ones draw random pairs.
inline TriangleFreeResult random_triangle_free(int n, int max_degree, std::size_t edge_target, std::uint64_t seed) {
  if (n < 1 || max_degree < 0) throw Error(ErrorCode::BadParams, "bad triangle-free parameters");
  Xoshiro256 rng(seed);
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  std::vector<Edge> edges;
  auto has = [&](Vertex x, Vertex y) { return std::find(adj[x].begin(), adj[x].end(), y) != adj[x].end(); };
  auto try_add = [&](Vertex u, Vertex v) {
    if (u == v || static_cast<int>(adj[u].size()) >= max_degree || static_cast<int>(adj[v].size()) >= max_degree)
      return;
    if (has(u, v)) return;
    const auto& small = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const Vertex other = adj[u].size() <= adj[v].size() ? v : u;
    for (Vertex x : small)
      if (has(other, x)) return;
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  };
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (pairs <= 5000000) {
    std::vector<Edge> cand;
    cand.reserve(pairs);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) cand.emplace_back(u, v);
    rng.shuffle(cand);
    for (auto [u, v] : cand) {
      if (edges.size() >= edge_target) break;
      try_add(u, v);
    }
  } else {
    const std::uint64_t attempts = 64 * std::max<std::uint64_t>(edge_target, 1);
    for (std::uint64_t t = 0; t < attempts && edges.size() < edge_target; ++t) {
      const auto u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      try_add(u, v);
    }
  }
  return {Graph::from_edges(n, edges), edge_target, edges.size()};
}

/// Seeded random lists with |L(v)| = size(v), colors drawn from [q].
inline std::vector<ColorList> random_lists(const Graph& g, int q, const std::function<int(Vertex)>& size,
                                           std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<ColorList> lists;
  lists.reserve(static_cast<std::size_t>(g.size()));
  ColorList palette(static_cast<std::size_t>(q));
  for (int v = 0; v < g.size(); ++v) {
    const int s = std::clamp(size(v), 1, q);
    std::iota(palette.begin(), palette.end(), 1);
    rng.shuffle(palette);
    ColorList l(palette.begin(), palette.begin() + s);
    std::sort(l.begin(), l.end());
    lists.push_back(std::move(l));
  }
  return lists;
}

/// Random lists honoring |L(v)| >= q - Delta + deg(v) (and at least min_size).
inline std::vector<ColorList> random_delta_q_lists(const Graph& g, int q, int delta, int min_size,
                                                   std::uint64_t seed) {
  return random_lists(g, q, [&](Vertex v) { return std::max(min_size, q - delta + g.degree(v)); }, seed);
}

/// "family:p1,p2,..." with families star, path, cycle, grid,
/// complete_bipartite, random_bipartite, random_triangle_free. Random families
/// take an optional trailing seed; otherwise the caller's seed is used.
struct GeneratorSpec {
  std::string family;
  std::vector<double> params;

  static GeneratorSpec parse(const std::string& text) {
    GeneratorSpec s;
    const auto colon = text.find(':');
    s.family = text.substr(0, colon);
    if (colon != std::string::npos) {
      std::string rest = text.substr(colon + 1);
      std::replace(rest.begin(), rest.end(), 'x', ',');
      std::stringstream ss(rest);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          std::size_t used = 0;
          s.params.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "bad generator parameter '" + tok + "'");
        }
      }
    }
    return s;
  }

  bool claims_triangle_free() const { return !(family == "cycle" && !params.empty() && params[0] == 3); }

  Graph build(std::uint64_t seed, std::size_t* added_edges = nullptr) const {
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (params.size() < lo || params.size() > hi)
        throw Error(ErrorCode::BadParams, "generator '" + family + "' expects " + std::to_string(lo) +
                                              (lo == hi ? "" : "-" + std::to_string(hi)) + " parameters");
    };
    auto i = [&](std::size_t k) { return static_cast<int>(params[k]); };
    auto seed_at = [&](std::size_t k) { return params.size() > k ? static_cast<std::uint64_t>(params[k]) : seed; };
    if (family == "star") return need(1, 1), star(i(0));
    if (family == "path") return need(1, 1), path(i(0));
    if (family == "cycle") return need(1, 1), cycle(i(0));
    if (family == "grid") return need(2, 2), grid(i(0), i(1));
    if (family == "complete_bipartite") return need(2, 2), complete_bipartite(i(0), i(1));
    if (family == "random_bipartite") return need(3, 4), random_bipartite(i(0), i(1), params[2], seed_at(3));
    if (family == "random_triangle_free") {
      need(3, 4);
      auto r = random_triangle_free(i(0), i(1), static_cast<std::size_t>(params[2]), seed_at(3));
      if (added_edges) *added_edges = r.added;
      return std::move(r.graph);
    }
    throw Error(ErrorCode::ParseError, "unknown generator family '" + family + "'");
  }
};

}  // namespace scol::gen

#endif  // SCOL_GENERATORS_HPP
