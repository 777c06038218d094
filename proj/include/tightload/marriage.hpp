#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tightload/bipartite.hpp"

namespace tightload {

// Maximum-cardinality matching: greedy pass then augmenting paths, both in
// ascending vertex order, so the result is deterministic.
Matching max_matching(const BipartiteGraph& g);

// A matching covering every present M-vertex exists.
bool is_espousable_finite(const BipartiteGraph& g);

// Some T subset of M with |N(T)| < |T|, or nullopt iff espousable.
std::optional<std::vector<Index>> hall_violator(const BipartiteGraph& g);

// N(UF cap M) == UF cap W. Throws NotAMatching if f is not a matching of g.
bool is_wave(const BipartiteGraph& g, const Matching& f);

// Criticality of a finite wave, decided by searching for a matching of
// UF cap M that covers a W-vertex outside UF.
bool critical_by_enumeration(const BipartiteGraph& g, const Matching& f);
// Criticality via alternating paths: no path from UF cap M that starts with a
// non-F edge and alternates reaches a W-vertex outside UF.
bool critical_by_alternating_paths(const BipartiteGraph& g, const Matching& f);
// Both methods; throws std::logic_error if they disagree and
// std::invalid_argument if f is not a wave.
bool is_critical_wave_finite(const BipartiteGraph& g, const Matching& f);

// Vertices of an alternating path, starting on the M side.
struct AlternatingPath {
  std::vector<Index> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

struct NoneWithinBound {};

using RayResult = std::variant<AlternatingPath, NoneWithinBound>;

// Simple F-alternating path from `start` whose first edge is not in F, of
// length >= bound (edges). Throws std::invalid_argument if bound < 1.
RayResult has_alternating_ray(const BipartiteGraph& g, const Matching& f, Index start, std::size_t bound);
// Lazy form: explores W-vertices 1..window_rows.
RayResult has_alternating_ray(const LazyBipartiteGraph& g, const LazyMatching& f, Index start, std::size_t bound,
                              std::size_t window_rows);

struct Impediment {
  Matching wave;
  Index a = 0;
};

// Checks the impediment conditions directly.
bool is_impediment(const BipartiteGraph& g, const Impediment& imp);

// a is the smallest M-vertex left uncovered by max_matching; the wave is
// everything reachable from a along alternating paths of that matching.
std::optional<Impediment> find_impediment(const BipartiteGraph& g);
// On the W-prefix 1..rows: a is the smallest M-vertex that some maximum
// matching of the window avoids, the wave its alternating reach.
std::optional<Impediment> find_impediment(const LazyBipartiteGraph& g, std::size_t rows);

struct ObstructionCertificate {
  Impediment impediment;
  // Finite graphs: criticality decided exactly (partial == false). Lazy
  // graphs: no alternating ray of length explored_bound was found inside the
  // explored rows, which never proves criticality.
  bool partial = false;
  std::size_t explored_rows = 0;
  std::size_t explored_bound = 0;
  std::string evidence;
};

std::optional<ObstructionCertificate> find_ps_obstruction_finite(const BipartiteGraph& g);

// Impediment inside the explored prefix plus a bounded search for an
// alternating ray out of the wave. A ray refutes criticality of the
// infinite wave; its absence is reported as a partial certificate.
struct LazyObstructionReport {
  std::optional<Impediment> impediment;
  std::optional<AlternatingPath> ray;
  std::size_t explored_rows = 0;
  std::size_t ray_bound = 0;

  std::optional<ObstructionCertificate> partial_certificate() const;
};

LazyObstructionReport find_ps_obstruction_lazy(const LazyBipartiteGraph& g, std::size_t rows, std::size_t ray_bound);

class ObstructedGraph : public std::invalid_argument {
 public:
  explicit ObstructedGraph(ObstructionCertificate certificate);
  const ObstructionCertificate& certificate() const { return certificate_; }

 private:
  ObstructionCertificate certificate_;
};

// Smallest w in N(m) with g - m - w unobstructed. Throws ObstructedGraph if g
// itself is obstructed; nullopt if m is not a vertex of g.
std::optional<Index> ps_step(const BipartiteGraph& g, Index m);

struct PartialMatching {
  Matching matching;
  std::vector<Index> schedule;  // M-vertices in the order they were matched
  std::size_t rows_explored = 0;
};

struct EspousalFailure {
  enum class Reason {
    // Every neighbor of m seen so far is already taken.
    kCollision,
    // The explored subgraph around m is obstructed for every choice.
    kObstructed,
    // m has no neighbor inside the row budget.
    kBudgetExceeded,
  };

  std::size_t stage = 0;  // 1-based index of the M-vertex being matched
  Reason reason = Reason::kBudgetExceeded;
  Index m = 0;
  Matching matched;                               // matching built so far
  std::vector<std::pair<Index, Index>> blocked;   // (w, current partner of w)
  std::optional<ObstructionCertificate> obstruction;
  std::size_t rows_explored = 0;
};

std::string to_string(EspousalFailure::Reason reason);

using EspousalResult = std::variant<PartialMatching, EspousalFailure>;

// Matches the first k scheduled M-vertices with repeated ps_step calls over
// the explored window. After matching m with w all of N(w) is queued before a
// fresh M-vertex is started. At most `budget` W-vertices are explored.
EspousalResult espouse_lazy(const LazyBipartiteGraph& g, std::size_t k, std::size_t budget);

}  // namespace tightload
