#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tightload/bipartite.hpp"
#include "tightload/matrix.hpp"

namespace tl_test {

using tightload::BipartiteGraph;
using tightload::FiniteMatrix;
using tightload::Index;
using tightload::Rational;

inline FiniteMatrix dense(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<Rational>> d;
  for (const auto& r : rows) d.emplace_back(r.begin(), r.end());
  return FiniteMatrix::from_dense(d);
}

inline BipartiteGraph graph(std::size_t m, std::size_t w, std::initializer_list<std::pair<Index, Index>> edges) {
  BipartiteGraph g(m, w);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

// Every bipartite graph on m x w vertices, edge set given by a bitmask.
inline BipartiteGraph graph_from_mask(std::size_t m, std::size_t w, std::uint32_t mask) {
  BipartiteGraph g(m, w);
  for (Index a = 1; a <= m; ++a) {
    for (Index b = 1; b <= w; ++b) {
      if (mask & (1u << ((a - 1) * w + (b - 1)))) g.add_edge(a, b);
    }
  }
  return g;
}

}  // namespace tl_test
