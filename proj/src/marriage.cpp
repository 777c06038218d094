#include "tightload/marriage.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace tightload {
namespace {

class Augmenter {
 public:
  explicit Augmenter(const BipartiteGraph& g)
      : g_(g), m_to_w_(g.m_count() + 1, 0), w_to_m_(g.w_count() + 1, 0), seen_(g.w_count() + 1, false) {}

  void greedy() {
    for (Index m : g_.m_vertices()) {
      for (Index w : g_.neighbors_of_m(m)) {
        if (w_to_m_[w] == 0) {
          link(m, w);
          break;
        }
      }
    }
  }

  void augment_all() {
    for (Index m : g_.m_vertices()) {
      if (m_to_w_[m] != 0) continue;
      std::fill(seen_.begin(), seen_.end(), false);
      try_augment(m);
    }
  }

  Matching result() const {
    Matching out;
    for (Index m = 1; m < m_to_w_.size(); ++m) {
      if (m_to_w_[m] != 0) out.add(m, m_to_w_[m]);
    }
    return out;
  }

 private:
  void link(Index m, Index w) {
    m_to_w_[m] = w;
    w_to_m_[w] = m;
  }

  bool try_augment(Index m) {
    for (Index w : g_.neighbors_of_m(m)) {
      if (seen_[w]) continue;
      seen_[w] = true;
      if (w_to_m_[w] == 0 || try_augment(w_to_m_[w])) {
        link(m, w);
        return true;
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<Index> m_to_w_;
  std::vector<Index> w_to_m_;
  std::vector<bool> seen_;
};

struct Reach {
  std::set<Index> m_side;
  std::set<Index> w_side;
};

// Vertices reachable from an uncovered M-vertex along alternating paths
// (non-matching edge out of M, matching edge back). With a maximum matching
// every reached W-vertex is covered.
Reach alternating_reach(const BipartiteGraph& g, const Matching& mx, Index start) {
  Reach reach;
  std::deque<Index> queue{start};
  reach.m_side.insert(start);
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    for (Index w : g.neighbors_of_m(x)) {
      if (!reach.w_side.insert(w).second) continue;
      auto p = mx.partner_of_w(w);
      if (!p) throw std::logic_error("alternating reach found an augmenting path in a maximum matching");
      if (reach.m_side.insert(*p).second) queue.push_back(*p);
    }
  }
  return reach;
}

void require_matching(const BipartiteGraph& g, const Matching& f) {
  if (!is_matching_in(g, f)) throw NotAMatching("F uses an edge that is not in the graph");
}

// Does X = UF cap M have a saturating matching that uses the edge (x, w)?
bool saturating_with_edge(const BipartiteGraph& g, const std::set<Index>& xs, Index x, Index w) {
  BipartiteGraph h(g.m_count(), g.w_count());
  for (Index m = 1; m <= g.m_count(); ++m) {
    if (xs.count(m) == 0 || m == x) h.remove_m(m);
  }
  h.remove_w(w);
  for (Index m : xs) {
    if (m == x) continue;
    for (Index v : g.neighbors_of_m(m)) {
      if (h.has_w(v)) h.add_edge(m, v);
    }
  }
  return max_matching(h).size() == xs.size() - 1;
}

bool extend_ray(const BipartiteGraph& g, const Matching& f, std::size_t bound, std::vector<Index>& path,
                std::set<Index>& on_path_m, std::set<Index>& on_path_w) {
  const Index x = path.back();
  const auto fx = f.partner_of_m(x);
  for (Index w : g.neighbors_of_m(x)) {
    if (fx == w || on_path_w.count(w) != 0) continue;
    path.push_back(w);
    on_path_w.insert(w);
    if (path.size() - 1 >= bound) return true;
    if (auto p = f.partner_of_w(w); p && on_path_m.count(*p) == 0) {
      path.push_back(*p);
      on_path_m.insert(*p);
      if (path.size() - 1 >= bound) return true;
      if (extend_ray(g, f, bound, path, on_path_m, on_path_w)) return true;
      on_path_m.erase(*p);
      path.pop_back();
    }
    on_path_w.erase(w);
    path.pop_back();
  }
  return false;
}

}  // namespace

Matching max_matching(const BipartiteGraph& g) {
  Augmenter aug(g);
  aug.greedy();
  aug.augment_all();
  return aug.result();
}

bool is_espousable_finite(const BipartiteGraph& g) { return max_matching(g).size() == g.m_vertices().size(); }

std::optional<std::vector<Index>> hall_violator(const BipartiteGraph& g) {
  const Matching mx = max_matching(g);
  for (Index m : g.m_vertices()) {
    if (mx.covers_m(m)) continue;
    const Reach reach = alternating_reach(g, mx, m);
    return std::vector<Index>(reach.m_side.begin(), reach.m_side.end());
  }
  return std::nullopt;
}

bool is_wave(const BipartiteGraph& g, const Matching& f) {
  require_matching(g, f);
  return g.neighbors_of_m_set(f.m_side()) == f.w_side();
}

bool critical_by_enumeration(const BipartiteGraph& g, const Matching& f) {
  const std::set<Index> xs = f.m_side();
  const std::set<Index> fw = f.w_side();
  for (Index x : xs) {
    for (Index w : g.neighbors_of_m(x)) {
      if (fw.count(w) != 0) continue;
      if (saturating_with_edge(g, xs, x, w)) return false;
    }
  }
  return true;
}

bool critical_by_alternating_paths(const BipartiteGraph& g, const Matching& f) {
  const std::set<Index> fw = f.w_side();
  std::set<Index> seen_m = f.m_side();
  std::deque<Index> queue(seen_m.begin(), seen_m.end());
  std::set<Index> seen_w;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    const auto fx = f.partner_of_m(x);
    for (Index w : g.neighbors_of_m(x)) {
      if (fx == w) continue;
      if (fw.count(w) == 0) return false;
      if (!seen_w.insert(w).second) continue;
      auto p = f.partner_of_w(w);
      if (p && seen_m.insert(*p).second) queue.push_back(*p);
    }
  }
  return true;
}

bool is_critical_wave_finite(const BipartiteGraph& g, const Matching& f) {
  if (!is_wave(g, f)) throw std::invalid_argument("is_critical_wave_finite: F is not a wave");
  const bool by_enumeration = critical_by_enumeration(g, f);
  const bool by_paths = critical_by_alternating_paths(g, f);
  if (by_enumeration != by_paths) throw std::logic_error("criticality methods disagree");
  return by_enumeration;
}

RayResult has_alternating_ray(const BipartiteGraph& g, const Matching& f, Index start, std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("has_alternating_ray: bound must be >= 1");
  if (!g.has_m(start)) return NoneWithinBound{};
  const std::size_t vertices = g.m_vertices().size() + g.w_vertices().size();
  if (bound >= vertices) return NoneWithinBound{};
  std::vector<Index> path{start};
  std::set<Index> on_path_m{start};
  std::set<Index> on_path_w;
  if (extend_ray(g, f, bound, path, on_path_m, on_path_w)) return AlternatingPath{std::move(path)};
  return NoneWithinBound{};
}

RayResult has_alternating_ray(const LazyBipartiteGraph& g, const LazyMatching& f, Index start, std::size_t bound,
                              std::size_t window_rows) {
  const BipartiteGraph window = g.window(window_rows);
  return has_alternating_ray(window, restrict_matching(f, window), start, bound);
}

bool is_impediment(const BipartiteGraph& g, const Impediment& imp) {
  if (!is_matching_in(g, imp.wave) || !is_wave(g, imp.wave)) return false;
  if (!g.has_m(imp.a) || imp.wave.covers_m(imp.a)) return false;
  const auto fw = imp.wave.w_side();
  const auto& n = g.neighbors_of_m(imp.a);
  return std::includes(fw.begin(), fw.end(), n.begin(), n.end());
}

namespace {

Impediment impediment_from(const BipartiteGraph& g, const Matching& mx, Index a) {
  const Reach reach = alternating_reach(g, mx, a);
  Impediment imp;
  imp.a = a;
  for (Index w : reach.w_side) imp.wave.add(*mx.partner_of_w(w), w);
  return imp;
}

}  // namespace

std::optional<Impediment> find_impediment(const BipartiteGraph& g) {
  const Matching mx = max_matching(g);
  for (Index a : g.m_vertices()) {
    if (!mx.covers_m(a)) return impediment_from(g, mx, a);
  }
  return std::nullopt;
}

std::optional<Impediment> find_impediment(const LazyBipartiteGraph& g, std::size_t rows) {
  // High-index columns of a window are still open (later rows may touch
  // them), so prefer the smallest a that some maximum matching can skip.
  const BipartiteGraph w = g.window(rows);
  const std::size_t nu = max_matching(w).size();
  if (nu == w.m_vertices().size()) return std::nullopt;
  for (Index a : w.m_vertices()) {
    BipartiteGraph h = w;
    h.remove_m(a);
    const Matching mx = max_matching(h);
    if (mx.size() == nu) return impediment_from(w, mx, a);
  }
  throw std::logic_error("non-espousable graph without an avoidable M-vertex");
}

std::optional<ObstructionCertificate> find_ps_obstruction_finite(const BipartiteGraph& g) {
  auto imp = find_impediment(g);
  if (!imp) return std::nullopt;
  if (!is_critical_wave_finite(g, imp->wave)) {
    throw std::logic_error("finite wave reported non-critical");
  }
  ObstructionCertificate cert;
  cert.impediment = std::move(*imp);
  cert.partial = false;
  cert.explored_rows = g.w_count();
  cert.evidence = "finite wave: enumeration and alternating-path criticality checks agree";
  return cert;
}

std::optional<ObstructionCertificate> LazyObstructionReport::partial_certificate() const {
  if (!impediment || ray) return std::nullopt;
  ObstructionCertificate cert;
  cert.impediment = *impediment;
  cert.partial = true;
  cert.explored_rows = explored_rows;
  cert.explored_bound = ray_bound;
  cert.evidence = "PARTIAL: no alternating ray of length " + std::to_string(ray_bound) + " within " +
                  std::to_string(explored_rows) + " explored rows";
  return cert;
}

LazyObstructionReport find_ps_obstruction_lazy(const LazyBipartiteGraph& g, std::size_t rows, std::size_t ray_bound) {
  LazyObstructionReport report;
  const BipartiteGraph window = g.window(rows);
  report.explored_rows = window.w_count();
  report.ray_bound = ray_bound;
  report.impediment = find_impediment(g, rows);
  if (!report.impediment) return report;
  for (Index x : report.impediment->wave.m_side()) {
    auto ray = has_alternating_ray(window, report.impediment->wave, x, ray_bound);
    if (auto* path = std::get_if<AlternatingPath>(&ray)) {
      report.ray = std::move(*path);
      break;
    }
  }
  return report;
}

ObstructedGraph::ObstructedGraph(ObstructionCertificate certificate)
    : std::invalid_argument("graph contains a PS-obstruction"), certificate_(std::move(certificate)) {}

std::optional<Index> ps_step(const BipartiteGraph& g, Index m) {
  if (!g.has_m(m)) return std::nullopt;
  if (auto obstruction = find_ps_obstruction_finite(g)) throw ObstructedGraph(std::move(*obstruction));
  for (Index w : g.neighbors_of_m(m)) {
    if (!find_ps_obstruction_finite(g.without(m, w))) return w;
  }
  throw std::logic_error("unobstructed graph without a valid ps_step choice");
}

std::string to_string(EspousalFailure::Reason reason) {
  switch (reason) {
    case EspousalFailure::Reason::kCollision:
      return "collision";
    case EspousalFailure::Reason::kObstructed:
      return "obstructed";
    case EspousalFailure::Reason::kBudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

namespace {

class EspousalRun {
 public:
  EspousalRun(const LazyBipartiteGraph& g, std::size_t budget) : g_(g), budget_(budget) {}

  bool explore_more() {
    if (rows_.size() >= budget_ || !g_.has_w(rows_.size() + 1)) return false;
    rows_.push_back(g_.neighbors_of_w(rows_.size() + 1));
    return true;
  }

  // Explored W-vertices not yet used, against the M-vertices in `active`.
  BipartiteGraph subgraph(const std::set<Index>& active) const {
    std::size_t m_count = active.empty() ? 0 : *active.rbegin();
    BipartiteGraph h(m_count, rows_.size());
    for (Index m = 1; m <= m_count; ++m) {
      if (active.count(m) == 0) h.remove_m(m);
    }
    for (Index w = 1; w <= rows_.size(); ++w) {
      if (matched_.covers_w(w)) {
        h.remove_w(w);
        continue;
      }
      for (Index m : rows_[w - 1]) {
        if (active.count(m) != 0) h.add_edge(m, w);
      }
    }
    return h;
  }

  std::vector<Index> explored_neighbors(Index m) const {
    std::vector<Index> out;
    for (Index w = 1; w <= rows_.size(); ++w) {
      const auto& n = rows_[w - 1];
      if (std::find(n.begin(), n.end(), m) != n.end()) out.push_back(w);
    }
    return out;
  }

  EspousalResult run(std::size_t k) {
    std::deque<Index> queue;
    std::set<Index> queued;
    std::vector<Index> schedule;
    while (matched_.size() < k) {
      Index m = 0;
      while (!queue.empty() && m == 0) {
        if (!matched_.covers_m(queue.front())) m = queue.front();
        queue.pop_front();
      }
      if (m == 0) {
        m = 1;
        while (matched_.covers_m(m)) ++m;
      }
      queued.erase(m);

      std::set<Index> active(queue.begin(), queue.end());
      active.insert(m);
      std::optional<Index> chosen;
      BipartiteGraph h;
      while (true) {
        h = subgraph(active);
        if (!h.neighbors_of_m(m).empty() && !find_ps_obstruction_finite(h)) {
          chosen = ps_step(h, m);
          break;
        }
        if (!explore_more()) break;
      }
      if (!chosen) return failure(m, h);

      matched_.add(m, *chosen);
      schedule.push_back(m);
      for (Index next : rows_[*chosen - 1]) {
        if (matched_.covers_m(next) || !queued.insert(next).second) continue;
        queue.push_back(next);
      }
    }
    return PartialMatching{matched_, std::move(schedule), rows_.size()};
  }

 private:
  EspousalFailure failure(Index m, const BipartiteGraph& h) const {
    EspousalFailure f;
    f.stage = matched_.size() + 1;
    f.m = m;
    f.matched = matched_;
    f.rows_explored = rows_.size();
    const auto seen = explored_neighbors(m);
    if (seen.empty()) {
      f.reason = EspousalFailure::Reason::kBudgetExceeded;
    } else if (h.neighbors_of_m(m).empty()) {
      f.reason = EspousalFailure::Reason::kCollision;
      for (Index w : seen) f.blocked.emplace_back(w, *matched_.partner_of_w(w));
    } else {
      f.reason = EspousalFailure::Reason::kObstructed;
      f.obstruction = find_ps_obstruction_finite(h);
    }
    return f;
  }

  const LazyBipartiteGraph& g_;
  std::size_t budget_;
  std::vector<std::vector<Index>> rows_;
  Matching matched_;
};

}  // namespace

EspousalResult espouse_lazy(const LazyBipartiteGraph& g, std::size_t k, std::size_t budget) {
  return EspousalRun(g, budget).run(k);
}

}  // namespace tightload
