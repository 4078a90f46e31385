#ifndef SCOL_GRAPH_HPP
#define SCOL_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scol/color_mask.hpp"
#include "scol/error.hpp"

namespace scol {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using ColorList = std::vector<Color>;

/// Simple undirected graph on vertices 0..n-1 stored as sorted adjacency
/// (CSR). The integer order of vertices is the vertex order used by the
/// instance-derivation rules.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : offsets_(static_cast<std::size_t>(n) + 1, 0) {}

  static Graph from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) throw Error(ErrorCode::BadParams, "negative vertex count");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw Error(ErrorCode::BadVertex,
                    "edge {" + std::to_string(u) + "," + std::to_string(v) + "} outside 0.." +
                        std::to_string(n - 1));
      if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(u));
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
      auto& nb = adj[v];
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
        throw Error(ErrorCode::DuplicateEdge, "duplicate edge at vertex " + std::to_string(v));
      g.offsets_[v + 1] = g.offsets_[v] + nb.size();
    }
    g.flat_.reserve(g.offsets_.back());
    for (auto& nb : adj) g.flat_.insert(g.flat_.end(), nb.begin(), nb.end());
    return g;
  }

  static Graph from_edges(int n, const std::vector<Edge>& edges) {
    return from_edges(n, std::span<const Edge>(edges));
  }

  int size() const { return offsets_.empty() ? 0 : static_cast<int>(offsets_.size()) - 1; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {flat_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  int degree(Vertex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

  int max_degree() const {
    int d = 0;
    for (int v = 0; v < size(); ++v) d = std::max(d, degree(v));
    return d;
  }

  std::size_t edge_count() const { return flat_.size() / 2; }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges {u,v} with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int u = 0; u < size(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Subgraph induced by `keep` (sorted ascending). Vertex keep[t] becomes t.
  Graph induced(std::span<const Vertex> keep) const {
    std::vector<int> relabel(static_cast<std::size_t>(size()), -1);
    for (std::size_t t = 0; t < keep.size(); ++t) relabel[keep[t]] = static_cast<int>(t);
    Graph g;
    g.offsets_.assign(keep.size() + 1, 0);
    for (std::size_t t = 0; t < keep.size(); ++t) {
      for (Vertex w : neighbors(keep[t]))
        if (relabel[w] >= 0) g.flat_.push_back(relabel[w]);
      g.offsets_[t + 1] = g.flat_.size();
    }
    return g;
  }

  /// G \ v. Vertices above v shift down by one, preserving order.
  Graph without_vertex(Vertex v) const {
    std::vector<Vertex> keep;
    keep.reserve(static_cast<std::size_t>(size()));
    for (int w = 0; w < size(); ++w)
      if (w != v) keep.push_back(w);
    return induced(keep);
  }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> flat_;
};

/// Index of vertex w of G inside G \ v.
inline Vertex index_after_removal(Vertex w, Vertex removed) { return w > removed ? w - 1 : w; }

/// True iff the graph contains no 3-cycle.
inline bool is_triangle_free(const Graph& g) {
  for (int u = 0; u < g.size(); ++u) {
    auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a;
        else ++b;
      }
    }
  }
  return true;
}

/// A graph together with per-vertex color lists drawn from the palette [q].
class ListColoringInstance {
 public:
  ListColoringInstance() = default;

  ListColoringInstance(Graph graph, std::vector<ColorList> lists, int q)
      : graph_(std::move(graph)), lists_(std::move(lists)), q_(q) {
    if (q_ < 1) throw Error(ErrorCode::BadParams, "palette size q must be >= 1");
    if (static_cast<int>(lists_.size()) != graph_.size())
      throw Error(ErrorCode::BadParams, "expected " + std::to_string(graph_.size()) +
                                            " lists, got " + std::to_string(lists_.size()));
    for (std::size_t v = 0; v < lists_.size(); ++v) {
      auto& l = lists_[v];
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      if (l.empty()) throw Error(ErrorCode::EmptyList, "empty list at vertex " + std::to_string(v));
      if (l.front() < 1 || l.back() > q_)
        throw Error(ErrorCode::ColorOutOfRange,
                    "vertex " + std::to_string(v) + " has a color outside [1," + std::to_string(q_) + "]");
    }
  }

  const Graph& graph() const { return graph_; }
  int size() const { return graph_.size(); }
  int q() const { return q_; }

  std::span<const Color> list(Vertex v) const { return lists_[v]; }
  const std::vector<ColorList>& lists() const { return lists_; }
  int list_size(Vertex v) const { return static_cast<int>(lists_[v].size()); }

  bool in_list(Vertex v, Color c) const { return std::binary_search(lists_[v].begin(), lists_[v].end(), c); }

  int max_list_size() const {
    int m = 0;
    for (const auto& l : lists_) m = std::max(m, static_cast<int>(l.size()));
    return m;
  }

  /// |U_{G,L}|, the number of (vertex, color) pairs.
  std::size_t pair_count() const {
    std::size_t s = 0;
    for (const auto& l : lists_) s += l.size();
    return s;
  }

  /// |L(v)| >= deg(v) + 2 everywhere: the Glauber chain is ergodic.
  bool glauber_valid() const {
    for (int v = 0; v < size(); ++v)
      if (list_size(v) < graph_.degree(v) + 2) return false;
    return true;
  }

  /// |L(v)| >= deg(v) + 1 everywhere: every (v,i) extends to a coloring.
  bool degree_plus_one() const {
    for (int v = 0; v < size(); ++v)
      if (list_size(v) < graph_.degree(v) + 1) return false;
    return true;
  }

  ColorMask mask(Vertex v) const {
    ColorMask m;
    for (Color c : lists_[v]) m.set(c);
    return m;
  }

  bool operator==(const ListColoringInstance&) const = default;

 private:
  Graph graph_;
  std::vector<ColorList> lists_;
  int q_ = 0;
};

/// Validated instance from an edge list; n is the number of lists.
inline ListColoringInstance build_instance(const std::vector<Edge>& edges, std::vector<ColorList> lists, int q) {
  const int n = static_cast<int>(lists.size());
  return ListColoringInstance(Graph::from_edges(n, edges), std::move(lists), q);
}

inline ListColoringInstance full_palette(Graph g, int q) {
  ColorList all(static_cast<std::size_t>(q));
  std::iota(all.begin(), all.end(), 1);
  std::vector<ColorList> lists(static_cast<std::size_t>(g.size()), all);
  return ListColoringInstance(std::move(g), std::move(lists), q);
}

/// Membership test for (Delta,q)-list-coloring instances: max degree at most
/// Delta, all lists inside [q] and |L(v)| >= q - Delta + deg(v).
inline bool is_delta_q_instance(const ListColoringInstance& inst, int delta, int q) {
  if (delta < 3 || q < delta + 2)
    throw Error(ErrorCode::BadParams, "(Delta,q) requires Delta >= 3 and q >= Delta + 2");
  const Graph& g = inst.graph();
  if (g.max_degree() > delta) return false;
  for (int v = 0; v < inst.size(); ++v) {
    auto l = inst.list(v);
    if (!l.empty() && l.back() > q) return false;
    if (inst.list_size(v) < q - delta + g.degree(v)) return false;
  }
  return true;
}

/// Assignment of colors to a subset S of the vertices.
class PartialColoring {
 public:
  PartialColoring() = default;
  PartialColoring(std::initializer_list<std::pair<const Vertex, Color>> init) : assignment_(init) {}

  void assign(Vertex v, Color c) { assignment_[v] = c; }
  bool contains(Vertex v) const { return assignment_.count(v) != 0; }
  Color at(Vertex v) const { return assignment_.at(v); }
  std::size_t size() const { return assignment_.size(); }
  bool empty() const { return assignment_.empty(); }
  const std::map<Vertex, Color>& assignments() const { return assignment_; }

  /// Union with a disjoint partial coloring.
  PartialColoring merged(const PartialColoring& other) const {
    PartialColoring out = *this;
    for (auto [v, c] : other.assignment_) out.assignment_[v] = c;
    return out;
  }

 private:
  std::map<Vertex, Color> assignment_;
};

/// Vertices left free by a partial coloring, ascending; free[t] is vertex t of
/// the conditioned instance.
inline std::vector<Vertex> free_vertices(int n, const PartialColoring& tau) {
  std::vector<Vertex> out;
  for (int v = 0; v < n; ++v)
    if (!tau.contains(v)) out.push_back(v);
  return out;
}

/// (G_tau, L_tau): induced subgraph on V \ S with the colors used by tau on
/// neighbors removed from each list.
inline ListColoringInstance condition(const ListColoringInstance& inst, const PartialColoring& tau) {
  const Graph& g = inst.graph();
  for (auto [v, c] : tau.assignments()) {
    if (v < 0 || v >= inst.size()) throw Error(ErrorCode::BadVertex, "partial coloring vertex out of range");
    if (!inst.in_list(v, c))
      throw Error(ErrorCode::NonExtendable,
                  "color " + std::to_string(c) + " not in the list of vertex " + std::to_string(v));
    for (Vertex w : g.neighbors(v))
      if (tau.contains(w) && tau.at(w) == c)
        throw Error(ErrorCode::NonExtendable,
                    "edge {" + std::to_string(v) + "," + std::to_string(w) + "} is monochromatic");
  }
  if (tau.empty()) return inst;
  auto keep = free_vertices(inst.size(), tau);
  std::vector<ColorList> lists;
  lists.reserve(keep.size());
  for (Vertex v : keep) {
    ColorList l;
    for (Color c : inst.list(v)) {
      bool blocked = false;
      for (Vertex w : g.neighbors(v))
        if (tau.contains(w) && tau.at(w) == c) {
          blocked = true;
          break;
        }
      if (!blocked) l.push_back(c);
    }
    if (l.empty())
      throw Error(ErrorCode::NonExtendable, "vertex " + std::to_string(v) + " has no color left");
    lists.push_back(std::move(l));
  }
  return ListColoringInstance(g.induced(keep), std::move(lists), inst.q());
}

/// (G_v, L_u^{ij}): delete v, remove i from the lists of neighbors u' < u,
/// remove j from the lists of neighbors u' > u, leave u itself untouched.
inline ListColoringInstance derive_instance(const ListColoringInstance& inst, Vertex v, Vertex u, Color i, Color j) {
  const Graph& g = inst.graph();
  if (v < 0 || v >= inst.size() || u < 0 || u >= inst.size())
    throw Error(ErrorCode::BadVertex, "vertex out of range");
  if (!g.adjacent(v, u))
    throw Error(ErrorCode::NotNeighbor, std::to_string(u) + " is not a neighbor of " + std::to_string(v));
  if (!inst.in_list(v, i) || !inst.in_list(v, j))
    throw Error(ErrorCode::ColorNotInList, "derived colors must come from L(v)");
  if (i == j) throw Error(ErrorCode::BadParams, "derived colors must differ");

  std::vector<ColorList> lists;
  lists.reserve(static_cast<std::size_t>(inst.size()) - 1);
  for (int w = 0; w < inst.size(); ++w) {
    if (w == v) continue;
    ColorList l(inst.list(w).begin(), inst.list(w).end());
    if (w != u && g.adjacent(v, w)) {
      const Color drop = w < u ? i : j;
      l.erase(std::remove(l.begin(), l.end(), drop), l.end());
      if (l.empty())
        throw Error(ErrorCode::EmptyList, "derived list of vertex " + std::to_string(w) + " is empty");
    }
    lists.push_back(std::move(l));
  }
  return ListColoringInstance(g.without_vertex(v), std::move(lists), inst.q());
}

/// A family of list assignments on one shared graph.
class InstanceCollection {
 public:
  InstanceCollection() = default;
  explicit InstanceCollection(Graph graph) : graph_(std::move(graph)) {}
  explicit InstanceCollection(const ListColoringInstance& single) : graph_(single.graph()) { add(single); }

  void add(ListColoringInstance inst) {
    if (!(inst.graph() == graph_))
      throw Error(ErrorCode::BadParams, "collection members must share the same graph");
    members_.push_back(std::move(inst));
  }

  const Graph& graph() const { return graph_; }
  const std::vector<ListColoringInstance>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  int q() const {
    int q = 0;
    for (const auto& m : members_) q = std::max(q, m.q());
    return q;
  }

 private:
  Graph graph_;
  std::vector<ListColoringInstance> members_;
};

/// Collection L_v on G \ v: every L_u^{ij} over members L, neighbors u of v and
/// ordered pairs i != j from L(v). Identical list families are kept once
/// (first occurrence) when `dedup` is set.
inline InstanceCollection derive_collection(const InstanceCollection& coll, Vertex v, bool dedup = true) {
  const Graph& g = coll.graph();
  if (v < 0 || v >= g.size()) throw Error(ErrorCode::BadVertex, "vertex out of range");
  if (g.degree(v) == 0) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has no neighbors");
  InstanceCollection out(g.without_vertex(v));
  std::map<std::vector<ColorList>, bool> index;
  for (const auto& inst : coll.members()) {
    for (Vertex u : g.neighbors(v)) {
      for (Color i : inst.list(v)) {
        for (Color j : inst.list(v)) {
          if (i == j) continue;
          auto d = derive_instance(inst, v, u, i, j);
          if (dedup) {
            auto [it, fresh] = index.emplace(d.lists(), true);
            if (!fresh) continue;
          }
          out.add(std::move(d));
        }
      }
    }
  }
  return out;
}

}  // namespace scol

#endif  // SCOL_GRAPH_HPP
