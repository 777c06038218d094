#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightload/matrix.hpp"

namespace tightload {

// Finite bipartite graph with sides M and W, vertices numbered 1..count on
// each side. Vertices can be removed (G - m - w) without renumbering.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t m_count, std::size_t w_count);

  void add_edge(Index m, Index w);
  bool has_edge(Index m, Index w) const;

  // Removes the vertex and its incident edges.
  void remove_m(Index m);
  void remove_w(Index w);
  BipartiteGraph without(Index m, Index w) const;

  std::size_t m_count() const { return m_adj_.size(); }
  std::size_t w_count() const { return w_adj_.size(); }
  bool has_m(Index m) const { return m >= 1 && m <= m_count() && m_present_[m - 1]; }
  bool has_w(Index w) const { return w >= 1 && w <= w_count() && w_present_[w - 1]; }
  std::vector<Index> m_vertices() const;
  std::vector<Index> w_vertices() const;

  // Ascending neighbor lists of present vertices.
  const std::set<Index>& neighbors_of_m(Index m) const;
  const std::set<Index>& neighbors_of_w(Index w) const;
  std::set<Index> neighbors_of_m_set(const std::set<Index>& ms) const;

  std::size_t edge_count() const;
  std::vector<std::pair<Index, Index>> edges() const;

 private:
  std::vector<std::set<Index>> m_adj_;
  std::vector<std::set<Index>> w_adj_;
  std::vector<bool> m_present_;
  std::vector<bool> w_present_;
};

// Set of disjoint edges, stored as M -> W with the inverse kept in sync.
class Matching {
 public:
  Matching() = default;
  Matching(std::initializer_list<std::pair<const Index, Index>> edges);

  // Throws std::invalid_argument if either endpoint is already matched.
  void add(Index m, Index w);
  void erase_m(Index m);

  std::optional<Index> partner_of_m(Index m) const;
  std::optional<Index> partner_of_w(Index w) const;
  bool covers_m(Index m) const { return m_to_w_.count(m) != 0; }
  bool covers_w(Index w) const { return w_to_m_.count(w) != 0; }

  std::size_t size() const { return m_to_w_.size(); }
  bool empty() const { return m_to_w_.empty(); }
  const std::map<Index, Index>& pairs() const { return m_to_w_; }
  std::set<Index> m_side() const;
  std::set<Index> w_side() const;

  friend bool operator==(const Matching& a, const Matching& b) { return a.m_to_w_ == b.m_to_w_; }

 private:
  std::map<Index, Index> m_to_w_;
  std::map<Index, Index> w_to_m_;
};

class NotAMatching : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// G_A: M = columns, W = rows, edge (j, i) iff a_{i,j} != 0.
BipartiteGraph graph_from_matrix(const FiniteMatrix& a);

// True when every edge of f is an edge of g.
bool is_matching_in(const BipartiteGraph& g, const Matching& f);

// Countable bipartite graph streamed from the W side: each W-vertex arrives
// with its finite neighborhood. Matrices give W = rows, N(row i) = support.
class LazyBipartiteGraph {
 public:
  using Neighborhood = std::function<std::vector<Index>(Index w)>;

  LazyBipartiteGraph(std::string name, Neighborhood neighbors, std::optional<Index> w_count = std::nullopt)
      : name_(std::move(name)), neighbors_(std::move(neighbors)), w_count_(w_count) {}

  static LazyBipartiteGraph from_matrix(const LazyMatrix& a);

  const std::string& name() const { return name_; }
  bool has_w(Index w) const { return w >= 1 && (!w_count_ || w <= *w_count_); }
  std::vector<Index> neighbors_of_w(Index w) const;

  // The W-vertices 1..rows with every M-vertex they mention.
  BipartiteGraph window(std::size_t rows) const;

 private:
  std::string name_;
  Neighborhood neighbors_;
  std::optional<Index> w_count_;
};

// Possibly infinite matching described by its W-side partner function.
using LazyMatching = std::function<std::optional<Index>(Index w)>;

// Restriction of a lazy matching to the vertices of a window.
Matching restrict_matching(const LazyMatching& f, const BipartiteGraph& window);

// DOT rendering: M-vertices "c<j>", W-vertices "r<i>", matching edges bold.
std::string to_dot(const BipartiteGraph& g, const Matching* highlight = nullptr);

}  // namespace tightload
