#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tightload/bipartite.hpp"
#include "tightload/loader.hpp"

namespace tightload {

// Row i = e_1 - e_{i+1}. Column-independent, A.1 = 0, not loaded.
LazyMatrix family_donjuan();
// Row 2k-1 = e_{2k-1} + e_{2k} + e_{2k+1}, row 2k = e_{2k} + e_{2k+1}.
// Tight, yet x_1 with {(x_{j+1}, eq_j)} is an impediment of G_A.
LazyMatrix family_impediment_chain();
// Row i = e_i.
LazyMatrix family_identity();

// Deterministic generator shared by all random families.
//
// Engine: std::mt19937_64 seeded with the family seed (the engine's output
// sequence is fixed by the C++ standard). Derived draws:
//   below(n)        = next() % n
//   coin()          = next() % 2 == 1
//   rational()      = (coin() ? -1 : 1) * (1 + below(9)) / (1 + below(9))
//                     (sign, numerator, denominator drawn in that order)
//   hit(density)    = (next() >> 32) < density * 2^32, compared exactly
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool coin() { return below(2) == 1; }
  Rational rational();
  bool hit(const Rational& density);

 private:
  std::mt19937_64 engine_;
};

// (n + extra) x n tight matrix: random upper-triangular base with nonzero
// diagonal, 2n random legal row operations (swap, or row_i += c * row_k),
// then `extra` rows that are random combinations of the n mixed rows.
// Throws std::invalid_argument if n < 1.
FiniteMatrix family_random_tight(std::uint64_t seed, std::size_t n, std::size_t extra);

// Each entry is nonzero with probability `density`, value rational().
// Throws std::invalid_argument unless 0 < density <= 1.
FiniteMatrix family_random_sparse(std::uint64_t seed, std::size_t n_rows, std::size_t n_cols,
                                  const Rational& density);

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A named family with its parameters, e.g. "random-tight:seed=3,n=4,extra=1".
struct FamilySpec {
  std::string name;
  std::map<std::string, Rational> params;
  std::uint64_t seed = 0;

  // "NAME" or "NAME:key=value,key=value"; "seed" is lifted into `seed`.
  static FamilySpec parse(const std::string& text);
  std::string to_string() const;
};

using FamilyMatrix = std::variant<FiniteMatrix, LazyMatrix>;

// Names: "donjuan", "impediment-chain", "identity" (lazy);
// "random-tight" (n, extra), "random-sparse" (rows, cols, density) (finite).
// Throws UnknownFamily for other names or missing/invalid parameters.
FamilyMatrix instantiate(const FamilySpec& spec);
std::vector<std::string> family_names();

class OracleGuardExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive backtracking over injections J -> I; returns the
// lexicographically first loading injection. Guard: n_cols <= 8.
std::optional<Injection> oracle_loaded(const FiniteMatrix& a);

// Exhaustive search for a matching covering M. Guard: |M| <= 8.
bool oracle_espousable(const BipartiteGraph& g);

// Enumerates every matching saturating UF cap M. Guard: |UF cap M| <= 7.
// A matching that is not a wave comes out false (some m has a free
// neighbour outside UF, so swapping it in moves the covered W-set).
// Throws std::invalid_argument if f is not a matching of g.
bool oracle_critical_wave(const BipartiteGraph& g, const Matching& f);

// Enumerates every matching F of g and every a, looking for an impediment
// with a critical wave (criticality by oracle_critical_wave). Guard:
// |M| <= 6 and |W| <= 6.
bool oracle_has_ps_obstruction(const BipartiteGraph& g);

// Every matching of g (including the empty one). Guard: |M| <= 6.
std::vector<Matching> oracle_all_matchings(const BipartiteGraph& g);

}  // namespace tightload
