#ifndef SCOL_TESTS_FIXTURES_HPP
#define SCOL_TESTS_FIXTURES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "scol/scol.hpp"

namespace fixtures {

using scol::ListColoringInstance;

inline ListColoringInstance star(int delta, int q) { return scol::full_palette(scol::gen::star(delta), q); }
inline ListColoringInstance path(int n, int q) { return scol::full_palette(scol::gen::path(n), q); }
inline ListColoringInstance cycle(int n, int q) { return scol::full_palette(scol::gen::cycle(n), q); }
inline ListColoringInstance grid(int r, int c, int q) { return scol::full_palette(scol::gen::grid(r, c), q); }

inline ListColoringInstance triangle(int q) {
  return scol::full_palette(scol::Graph::from_edges(3, std::vector<scol::Edge>{{0, 1}, {1, 2}, {0, 2}}), q);
}

/// Random lists of size deg(v) + 2 + extra drawn from [q].
inline ListColoringInstance tight_lists(const scol::Graph& g, int q, int extra, std::uint64_t seed) {
  auto lists = scol::gen::random_lists(g, q, [&](scol::Vertex v) { return g.degree(v) + 2 + extra; }, seed);
  return ListColoringInstance(g, std::move(lists), q);
}

/// The "Delta, q" region constants at Delta = 3 quoted in tests.
inline int min_region_q(double eps, int delta) {
  return static_cast<int>(std::ceil(scol::region_params(eps).threshold(delta)));
}

inline int min_eigen_q(double eps, int delta) {
  return static_cast<int>(std::ceil(scol::region_params(eps).alpha * delta + 1.0));
}

}  // namespace fixtures

#endif  // SCOL_TESTS_FIXTURES_HPP
