#include "tightload/bipartite.hpp"

#include <algorithm>
#include <sstream>

namespace tightload {
namespace {

const std::set<Index>& empty_set() {
  static const std::set<Index> kEmpty;
  return kEmpty;
}

}  // namespace

BipartiteGraph::BipartiteGraph(std::size_t m_count, std::size_t w_count)
    : m_adj_(m_count), w_adj_(w_count), m_present_(m_count, true), w_present_(w_count, true) {}

void BipartiteGraph::add_edge(Index m, Index w) {
  if (!has_m(m) || !has_w(w)) {
    throw std::out_of_range("edge (" + std::to_string(m) + "," + std::to_string(w) + ") names a missing vertex");
  }
  m_adj_[m - 1].insert(w);
  w_adj_[w - 1].insert(m);
}

bool BipartiteGraph::has_edge(Index m, Index w) const { return has_m(m) && m_adj_[m - 1].count(w) != 0; }

void BipartiteGraph::remove_m(Index m) {
  if (!has_m(m)) return;
  for (Index w : m_adj_[m - 1]) w_adj_[w - 1].erase(m);
  m_adj_[m - 1].clear();
  m_present_[m - 1] = false;
}

void BipartiteGraph::remove_w(Index w) {
  if (!has_w(w)) return;
  for (Index m : w_adj_[w - 1]) m_adj_[m - 1].erase(w);
  w_adj_[w - 1].clear();
  w_present_[w - 1] = false;
}

BipartiteGraph BipartiteGraph::without(Index m, Index w) const {
  BipartiteGraph g = *this;
  g.remove_m(m);
  g.remove_w(w);
  return g;
}

std::vector<Index> BipartiteGraph::m_vertices() const {
  std::vector<Index> out;
  for (Index m = 1; m <= m_count(); ++m) {
    if (m_present_[m - 1]) out.push_back(m);
  }
  return out;
}

std::vector<Index> BipartiteGraph::w_vertices() const {
  std::vector<Index> out;
  for (Index w = 1; w <= w_count(); ++w) {
    if (w_present_[w - 1]) out.push_back(w);
  }
  return out;
}

const std::set<Index>& BipartiteGraph::neighbors_of_m(Index m) const {
  return has_m(m) ? m_adj_[m - 1] : empty_set();
}

const std::set<Index>& BipartiteGraph::neighbors_of_w(Index w) const {
  return has_w(w) ? w_adj_[w - 1] : empty_set();
}

std::set<Index> BipartiteGraph::neighbors_of_m_set(const std::set<Index>& ms) const {
  std::set<Index> out;
  for (Index m : ms) {
    const auto& n = neighbors_of_m(m);
    out.insert(n.begin(), n.end());
  }
  return out;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : m_adj_) n += adj.size();
  return n;
}

std::vector<std::pair<Index, Index>> BipartiteGraph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index m = 1; m <= m_count(); ++m) {
    for (Index w : m_adj_[m - 1]) out.emplace_back(m, w);
  }
  return out;
}

Matching::Matching(std::initializer_list<std::pair<const Index, Index>> edges) {
  for (const auto& [m, w] : edges) add(m, w);
}

void Matching::add(Index m, Index w) {
  if (covers_m(m) || covers_w(w)) {
    throw NotAMatching("edge (" + std::to_string(m) + "," + std::to_string(w) + ") shares an endpoint");
  }
  m_to_w_.emplace(m, w);
  w_to_m_.emplace(w, m);
}

void Matching::erase_m(Index m) {
  auto it = m_to_w_.find(m);
  if (it == m_to_w_.end()) return;
  w_to_m_.erase(it->second);
  m_to_w_.erase(it);
}

std::optional<Index> Matching::partner_of_m(Index m) const {
  auto it = m_to_w_.find(m);
  if (it == m_to_w_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> Matching::partner_of_w(Index w) const {
  auto it = w_to_m_.find(w);
  if (it == w_to_m_.end()) return std::nullopt;
  return it->second;
}

std::set<Index> Matching::m_side() const {
  std::set<Index> out;
  for (const auto& [m, w] : m_to_w_) out.insert(m);
  return out;
}

std::set<Index> Matching::w_side() const {
  std::set<Index> out;
  for (const auto& [w, m] : w_to_m_) out.insert(w);
  return out;
}

BipartiteGraph graph_from_matrix(const FiniteMatrix& a) {
  BipartiteGraph g(a.n_cols(), a.n_rows());
  for (Index i = 1; i <= a.n_rows(); ++i) {
    for (const auto& [j, value] : a.row(i)) g.add_edge(j, i);
  }
  return g;
}

bool is_matching_in(const BipartiteGraph& g, const Matching& f) {
  return std::all_of(f.pairs().begin(), f.pairs().end(), [&](const auto& e) { return g.has_edge(e.first, e.second); });
}

LazyBipartiteGraph LazyBipartiteGraph::from_matrix(const LazyMatrix& a) {
  return LazyBipartiteGraph(
      a.name(), [a](Index w) { return a.row(w).support(); }, a.row_count());
}

std::vector<Index> LazyBipartiteGraph::neighbors_of_w(Index w) const {
  if (!has_w(w)) throw RowUnavailable(w);
  return neighbors_(w);
}

BipartiteGraph LazyBipartiteGraph::window(std::size_t rows) const {
  if (w_count_) rows = std::min<std::size_t>(rows, *w_count_);
  std::vector<std::vector<Index>> nbrs;
  nbrs.reserve(rows);
  std::size_t m_count = 0;
  for (Index w = 1; w <= rows; ++w) {
    nbrs.push_back(neighbors_(w));
    for (Index m : nbrs.back()) m_count = std::max(m_count, m);
  }
  BipartiteGraph g(m_count, rows);
  for (Index w = 1; w <= rows; ++w) {
    for (Index m : nbrs[w - 1]) g.add_edge(m, w);
  }
  return g;
}

Matching restrict_matching(const LazyMatching& f, const BipartiteGraph& window) {
  Matching out;
  for (Index w : window.w_vertices()) {
    auto m = f(w);
    if (m && window.has_edge(*m, w)) out.add(*m, w);
  }
  return out;
}

std::string to_dot(const BipartiteGraph& g, const Matching* highlight) {
  std::ostringstream os;
  os << "graph G_A {\n";
  os << "  rankdir=LR;\n";
  os << "  subgraph cluster_columns {\n    label=\"M (columns)\";\n";
  for (Index m : g.m_vertices()) os << "    c" << m << ";\n";
  os << "  }\n";
  os << "  subgraph cluster_rows {\n    label=\"W (rows)\";\n";
  for (Index w : g.w_vertices()) os << "    r" << w << ";\n";
  os << "  }\n";
  for (const auto& [m, w] : g.edges()) {
    os << "  c" << m << " -- r" << w;
    if (highlight != nullptr && highlight->partner_of_m(m) == w) os << " [style=bold]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tightload
