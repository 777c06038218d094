#include "tightload/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace tightload {

LazyMatrix family_donjuan() {
  return LazyMatrix("donjuan", [](Index i) { return SparseVector{{1, Rational(1)}, {i + 1, Rational(-1)}}; });
}

LazyMatrix family_impediment_chain() {
  return LazyMatrix("impediment-chain", [](Index i) {
    if (i % 2 == 1) return SparseVector{{i, Rational(1)}, {i + 1, Rational(1)}, {i + 2, Rational(1)}};
    return SparseVector{{i, Rational(1)}, {i + 1, Rational(1)}};
  });
}

LazyMatrix family_identity() {
  return LazyMatrix("identity", [](Index i) { return SparseVector::unit(i); });
}

Rational CorpusRng::rational() {
  const bool negative = coin();
  const auto numerator = static_cast<std::int64_t>(1 + below(9));
  const auto denominator = static_cast<std::int64_t>(1 + below(9));
  return Rational(negative ? -numerator : numerator, denominator);
}

bool CorpusRng::hit(const Rational& density) {
  const auto u = static_cast<std::int64_t>(next() >> 32);
  return Rational(u) < density * Rational(std::int64_t{1} << 32);
}

FiniteMatrix family_random_tight(std::uint64_t seed, std::size_t n, std::size_t extra) {
  if (n < 1) throw std::invalid_argument("random-tight needs n >= 1");
  CorpusRng rng(seed);
  FiniteMatrix a(n, n);
  for (Index i = 1; i <= n; ++i) {
    a.set_entry(i, i, rng.rational());
    for (Index j = i + 1; j <= n; ++j) {
      if (rng.coin()) a.set_entry(i, j, rng.rational());
    }
  }
  for (std::size_t op = 0; op < 2 * n; ++op) {
    const bool swap = rng.coin();
    const Index i = 1 + rng.below(n);
    const Index k = 1 + rng.below(n);
    if (swap) {
      a.swap_rows(i, k);
      continue;
    }
    const Rational c = rng.rational();
    if (i == k) {
      a.set_row(i, a.row(i).scaled(c));
    } else {
      a.set_row(i, add_scaled(a.row(i), c, a.row(k)));
    }
  }
  std::vector<SparseVector> rows = a.rows();
  for (std::size_t e = 0; e < extra; ++e) {
    SparseVector combo;
    for (Index k = 1; k <= n; ++k) {
      if (rng.coin()) combo.axpy(rng.rational(), a.row(k));
    }
    rows.push_back(std::move(combo));
  }
  return FiniteMatrix(n, std::move(rows));
}

FiniteMatrix family_random_sparse(std::uint64_t seed, std::size_t n_rows, std::size_t n_cols,
                                  const Rational& density) {
  if (density.sign() <= 0 || density > Rational(1)) {
    throw std::invalid_argument("random-sparse density must lie in (0, 1]");
  }
  CorpusRng rng(seed);
  FiniteMatrix a(n_rows, n_cols);
  for (Index i = 1; i <= n_rows; ++i) {
    for (Index j = 1; j <= n_cols; ++j) {
      if (rng.hit(density)) a.set_entry(i, j, rng.rational());
    }
  }
  return a;
}

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw UnknownFamily("empty family name");
  if (colon == std::string::npos) return spec;
  std::stringstream params(text.substr(colon + 1));
  std::string item;
  while (std::getline(params, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UnknownFamily("malformed family parameter '" + item + "'");
    const std::string key = item.substr(0, eq);
    Rational value;
    try {
      value = Rational::parse(item.substr(eq + 1));
    } catch (const ParseError&) {
      throw UnknownFamily("malformed value for family parameter '" + key + "'");
    }
    if (key == "seed") {
      if (!value.is_integer() || value.sign() < 0) throw UnknownFamily("seed must be a non-negative integer");
      spec.seed = std::stoull(value.to_string());
    } else {
      spec.params.insert_or_assign(key, value);
    }
  }
  return spec;
}

std::string FamilySpec::to_string() const {
  std::string out = name;
  const bool random = name.rfind("random-", 0) == 0;
  if (params.empty() && !random) return out;
  out += ":seed=" + std::to_string(seed);
  for (const auto& [key, value] : params) out += "," + key + "=" + value.to_string();
  return out;
}

namespace {

std::size_t size_param(const FamilySpec& spec, const std::string& key, std::optional<std::size_t> fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    if (fallback) return *fallback;
    throw UnknownFamily("family '" + spec.name + "' needs parameter '" + key + "'");
  }
  if (!it->second.is_integer() || it->second.sign() < 0) {
    throw UnknownFamily("parameter '" + key + "' must be a non-negative integer");
  }
  return std::stoull(it->second.to_string());
}

}  // namespace

FamilyMatrix instantiate(const FamilySpec& spec) {
  if (spec.name == "donjuan") return family_donjuan();
  if (spec.name == "impediment-chain") return family_impediment_chain();
  if (spec.name == "identity") return family_identity();
  if (spec.name == "random-tight") {
    const std::size_t n = size_param(spec, "n", std::nullopt);
    if (n < 1) throw UnknownFamily("random-tight needs n >= 1");
    return family_random_tight(spec.seed, n, size_param(spec, "extra", 0));
  }
  if (spec.name == "random-sparse") {
    const std::size_t rows = size_param(spec, "rows", std::nullopt);
    const std::size_t cols = size_param(spec, "cols", std::nullopt);
    auto it = spec.params.find("density");
    const Rational density = it == spec.params.end() ? Rational(1, 2) : it->second;
    if (density.sign() <= 0 || density > Rational(1)) throw UnknownFamily("density must lie in (0, 1]");
    return family_random_sparse(spec.seed, rows, cols, density);
  }
  throw UnknownFamily("unknown family '" + spec.name + "'");
}

std::vector<std::string> family_names() {
  return {"donjuan", "impediment-chain", "identity", "random-tight", "random-sparse"};
}

std::optional<Injection> oracle_loaded(const FiniteMatrix& a) {
  if (a.n_cols() > 8) throw OracleGuardExceeded("oracle_loaded: more than 8 columns");
  const std::size_t n = a.n_cols();
  std::vector<Index> choice(n + 1, 0);
  std::vector<bool> taken(a.n_rows() + 1, false);
  std::function<bool(Index)> assign = [&](Index j) -> bool {
    if (j > n) return true;
    for (Index i = 1; i <= a.n_rows(); ++i) {
      if (taken[i] || a.entry(i, j).is_zero()) continue;
      taken[i] = true;
      choice[j] = i;
      if (assign(j + 1)) return true;
      taken[i] = false;
    }
    return false;
  };
  if (!assign(1)) return std::nullopt;
  Injection phi;
  for (Index j = 1; j <= n; ++j) phi.phi.emplace(j, choice[j]);
  return phi;
}

bool oracle_espousable(const BipartiteGraph& g) {
  const auto ms = g.m_vertices();
  if (ms.size() > 8) throw OracleGuardExceeded("oracle_espousable: |M| > 8");
  std::vector<bool> taken(g.w_count() + 1, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == ms.size()) return true;
    for (Index w : g.neighbors_of_m(ms[k])) {
      if (taken[w]) continue;
      taken[w] = true;
      if (assign(k + 1)) return true;
      taken[w] = false;
    }
    return false;
  };
  return assign(0);
}

bool oracle_critical_wave(const BipartiteGraph& g, const Matching& f) {
  for (const auto& [m, w] : f.pairs()) {
    if (!g.has_edge(m, w)) throw std::invalid_argument("oracle_critical_wave: F is not a matching of g");
  }
  const std::set<Index> xs_set = f.m_side();
  if (xs_set.size() > 7) throw OracleGuardExceeded("oracle_critical_wave: |UF cap M| > 7");
  const std::vector<Index> xs(xs_set.begin(), xs_set.end());
  const std::set<Index> fw = f.w_side();
  std::vector<Index> used;
  bool critical = true;
  // Visits every saturating matching, with no pruning on the outcome.
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == xs.size()) {
      if (std::set<Index>(used.begin(), used.end()) != fw) critical = false;
      return;
    }
    for (Index w : g.neighbors_of_m(xs[k])) {
      if (std::find(used.begin(), used.end(), w) != used.end()) continue;
      used.push_back(w);
      visit(k + 1);
      used.pop_back();
    }
  };
  visit(0);
  return critical;
}

std::vector<Matching> oracle_all_matchings(const BipartiteGraph& g) {
  const auto ms = g.m_vertices();
  if (ms.size() > 6) throw OracleGuardExceeded("oracle_all_matchings: |M| > 6");
  std::vector<Matching> out;
  Matching current;
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == ms.size()) {
      out.push_back(current);
      return;
    }
    visit(k + 1);
    for (Index w : g.neighbors_of_m(ms[k])) {
      if (current.covers_w(w)) continue;
      current.add(ms[k], w);
      visit(k + 1);
      current.erase_m(ms[k]);
    }
  };
  visit(0);
  return out;
}

bool oracle_has_ps_obstruction(const BipartiteGraph& g) {
  if (g.m_vertices().size() > 6 || g.w_vertices().size() > 6) {
    throw OracleGuardExceeded("oracle_has_ps_obstruction: graph larger than 6 x 6");
  }
  for (const Matching& f : oracle_all_matchings(g)) {
    if (g.neighbors_of_m_set(f.m_side()) != f.w_side()) continue;
    const auto fw = f.w_side();
    for (Index a : g.m_vertices()) {
      if (f.covers_m(a)) continue;
      const auto& n = g.neighbors_of_m(a);
      if (!std::includes(fw.begin(), fw.end(), n.begin(), n.end())) continue;
      if (oracle_critical_wave(g, f)) return true;
    }
  }
  return false;
}

}  // namespace tightload
