#ifndef SCOL_TESTS_NAIVE_ORACLE_HPP
#define SCOL_TESTS_NAIVE_ORACLE_HPP

// Reference computations by plain product enumeration, sharing no code with
// the library's counting engine beyond the instance type.

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "scol/graph.hpp"

namespace naive {

struct Table {
  std::uint64_t total = 0;
  std::map<std::pair<int, int>, std::uint64_t> single;                 // (v,c)
  std::map<std::tuple<int, int, int, int>, std::uint64_t> joint;       // (v,i,w,k)
  std::vector<std::vector<int>> colorings;

  double p(int v, int c) const {
    auto it = single.find({v, c});
    return it == single.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }
  double cond(int v, int i, int w, int k) const {
    const auto base = single.at({v, i});
    auto it = joint.find({v, i, w, k});
    return it == joint.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(base);
  }
  /// Influence entry with w != v.
  double m(int v, int i, int w, int k) const { return cond(v, i, w, k) - p(w, k); }
};

/// Walks the full product of the lists, keeping proper assignments.
inline Table enumerate(const scol::ListColoringInstance& inst, bool keep = false) {
  const int n = inst.size();
  Table t;
  std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
  std::vector<int> col(static_cast<std::size_t>(n));
  const auto edges = inst.graph().edges();
  for (;;) {
    for (int v = 0; v < n; ++v) col[v] = inst.list(v)[pos[v]];
    bool proper = true;
    for (auto [a, b] : edges)
      if (col[a] == col[b]) proper = false;
    if (proper) {
      ++t.total;
      for (int v = 0; v < n; ++v) {
        ++t.single[{v, col[v]}];
        for (int w = 0; w < n; ++w) ++t.joint[{v, col[v], w, col[w]}];
      }
      if (keep) t.colorings.push_back(col);
    }
    int v = n - 1;
    while (v >= 0 && ++pos[v] == inst.list(v).size()) pos[v--] = 0;
    if (v < 0) break;
  }
  return t;
}

}  // namespace naive

#endif  // SCOL_TESTS_NAIVE_ORACLE_HPP
