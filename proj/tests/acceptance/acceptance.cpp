// Acceptance suite. One PASS/FAIL line per criterion; the exit status is the
// number of failed criteria, so ctest sees any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tightload/corpus.hpp"
#include "tightload/io.hpp"
#include "tightload/marriage.hpp"
#include "tightload/tightness.hpp"

#ifndef TIGHTLOAD_CLI
#error "TIGHTLOAD_CLI must name the CLI binary"
#endif

using namespace tightload;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few problems so a FAIL line says why.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    std::string d = std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed";
    for (const auto& n : notes_) d += "; " + n;
    return {false, d};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

// Criterion 8 gathers every (G, F) pair whose criticality criteria 5 and 6 touched.
struct CriticalityLedger {
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  std::string first;

  void record(const BipartiteGraph& g, const Matching& f, const std::string& where) {
    if (f.m_side().size() > 7) return;
    ++pairs;
    const bool e = critical_by_enumeration(g, f);
    const bool p = critical_by_alternating_paths(g, f);
    const bool o = oracle_critical_wave(g, f);
    if (e == p && p == o) return;
    if (disagreements++ == 0) first = where;
  }
};

CriticalityLedger g_criticality;

std::string tag(std::uint64_t seed, std::size_t a, std::size_t b) {
  return "(" + std::to_string(seed) + "," + std::to_string(a) + "," + std::to_string(b) + ")";
}

// 520 tight matrices: every (n, extra) with n <= 8, extra <= 4, thirteen seeds each.
std::vector<FiniteMatrix> tight_corpus() {
  std::vector<FiniteMatrix> out;
  for (std::uint64_t seed = 1; seed <= 13; ++seed)
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::size_t extra = 0; extra <= 4; ++extra) out.push_back(family_random_tight(seed, n, extra));
  return out;
}

// 300 random-sparse matrices, rows and columns in 1..8, density 1/4, 1/2 or 3/4.
std::vector<FiniteMatrix> sparse_corpus() {
  std::vector<FiniteMatrix> out;
  const Rational densities[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (std::size_t d = 0; d < 3; ++d) {
      const std::size_t rows = 1 + (seed * 7 + d) % 8;
      const std::size_t cols = 1 + (seed * 5 + 3 * d) % 8;
      out.push_back(family_random_sparse(seed * 3 + d, rows, cols, densities[d]));
    }
  }
  return out;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Tally t;
  std::size_t oracle_checked = 0;
  const auto corpus = tight_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& a = corpus[k];
    const std::string id = "matrix #" + std::to_string(k);
    t.expect(is_tight(a).tight(), id + " not tight");
    const auto r = construct_injection_finite(a);
    const auto* phi = std::get_if<Injection>(&r);
    t.expect(phi != nullptr && phi->phi.size() == a.n_cols() && verify_injection(a, *phi), id + " no valid injection");
    if (a.n_cols() <= 6) {
      ++oracle_checked;
      t.expect(oracle_loaded(a).has_value(), id + " oracle finds no injection");
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(seconds < 60.0, "runtime " + std::to_string(seconds) + " s");
  std::ostringstream s;
  s << corpus.size() << " tight matrices loaded and verified, " << oracle_checked << " confirmed by oracle, "
    << static_cast<int>(seconds * 1000) << " ms";
  return t.outcome(s.str());
}

Outcome criterion2() {
  Tally t;
  std::vector<FiniteMatrix> mixed = tight_corpus();
  for (auto& m : sparse_corpus()) mixed.push_back(std::move(m));
  std::size_t tight = 0;
  for (std::size_t k = 0; k < mixed.size(); ++k) {
    const auto& a = mixed[k];
    const std::string id = "matrix #" + std::to_string(k);
    const bool kernel_trivial = kernel_basis(a).empty();
    bool columns = true;
    for (Index j = 1; j <= a.n_cols(); ++j) {
      const auto c = express_unit_vector(a, j);
      if (c) t.expect(verify_row_combination(a, *c), id + " bad combination");
      columns = columns && c.has_value();
    }
    const auto z = left_inverse(a);
    t.expect(kernel_trivial == columns && columns == z.has_value(), id + " predicates disagree");
    if (z) t.expect(verify_left_inverse(a, z->z), id + " Z A != I");
    tight += kernel_trivial ? 1 : 0;
  }
  return t.outcome(std::to_string(mixed.size()) + " matrices (" + std::to_string(tight) +
                   " tight): kernel, unit-vector and left-inverse predicates identical");
}

Outcome criterion3() {
  Tally t;
  std::vector<FiniteMatrix> all = tight_corpus();
  for (auto& m : sparse_corpus()) all.push_back(std::move(m));
  std::size_t traces = 0;
  std::size_t refused = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto& a = all[k];
    const std::string id = "matrix #" + std::to_string(k);
    const bool tight = is_tight(a).tight();
    const auto r = proudly_diagonalize(a, a.n_cols());
    if (tight) {
      const auto* trace = std::get_if<DiagonalizationTrace>(&r);
      t.expect(trace != nullptr, id + " tight but no trace");
      if (!trace) continue;
      const auto verdict = verify_trace(a, *trace);
      t.expect(verdict.ok, id + " trace rejected: " + verdict.diagnostic);
      const auto* last = trace->final_checkpoint();
      t.expect(last != nullptr && is_proudly_diagonal(*last), id + " final checkpoint not proudly diagonal");
      ++traces;
    } else {
      const auto* w = std::get_if<KernelWitness>(&r);
      t.expect(w != nullptr && verify_kernel_witness(a, *w), id + " non-tight without NotTight branch");
      ++refused;
    }
  }
  return t.outcome(std::to_string(traces) + " traces verified and proudly diagonal, " + std::to_string(refused) +
                   " non-tight matrices refused");
}

Outcome criterion4() {
  Tally t;
  const auto dj = family_donjuan();
  for (Index i = 1; i <= 100; ++i) {
    t.expect(dot(dj.row(i), Assignment::constant(1)).is_zero(), "row " + std::to_string(i) + " . 1 != 0");
  }
  const auto search = stubborn_search_lazy(dj, 1, 10000);
  const auto* ex = std::get_if<StubbornExhausted>(&search);
  t.expect(ex != nullptr && ex->rows_consumed == 10000, "stubborn search on column 1 did not exhaust 10000 rows");
  t.expect(!oracle_loaded(dj.prefix(3, 4)), "3x4 truncation loaded");
  t.expect(!oracle_loaded(dj.prefix(5, 6)), "5x6 truncation loaded");
  const auto run = espouse_lazy(LazyBipartiteGraph::from_matrix(dj), 10, 1000);
  const auto* f = std::get_if<EspousalFailure>(&run);
  t.expect(f != nullptr && f->reason == EspousalFailure::Reason::kCollision && !f->blocked.empty(),
           "espouse_lazy did not fail with a collision");
  std::string stage = f ? std::to_string(f->stage) : "?";
  return t.outcome("100 rows annihilate 1, column 1 undecided after 10000 rows, truncations unloaded, "
                   "espousal collides at stage " + stage);
}

Outcome criterion5() {
  Tally t;
  const auto chain = family_impediment_chain();
  const auto big = construct_injection_lazy(chain, 50, 200);
  const auto* p = std::get_if<PartialInjection>(&big);
  t.expect(p != nullptr && p->injection.phi.size() == 50 && verify_injection(chain, p->injection),
           "k=50 injection missing or invalid");
  if (p) {
    for (std::size_t k = 1; k < 50; ++k) {
      const auto small = construct_injection_lazy(chain, k, 200);
      const auto* q = std::get_if<PartialInjection>(&small);
      bool stable = q != nullptr;
      if (q) {
        for (const auto& [j, i] : q->injection.phi) stable = stable && p->injection.phi.at(j) == i;
      }
      t.expect(stable, "prefix k=" + std::to_string(k) + " disagrees with k=50");
    }
  }

  const auto g = LazyBipartiteGraph::from_matrix(chain);
  for (std::size_t rows = 1; rows <= 40; ++rows) {
    const auto imp = find_impediment(g, rows);
    Matching expected;
    for (Index j = 1; j <= rows; ++j) expected.add(j + 1, j);
    t.expect(imp && imp->a == 1 && imp->wave == expected, "impediment on " + std::to_string(rows) + " rows");
    if (imp) g_criticality.record(g.window(rows), imp->wave, "chain window " + std::to_string(rows));
  }

  const LazyMatching f = [](Index w) -> std::optional<Index> { return w + 1; };
  const auto ray = has_alternating_ray(g, f, 1, 20, 40);
  const auto* path = std::get_if<AlternatingPath>(&ray);
  t.expect(path != nullptr && path->length() >= 20, "no alternating ray of length 20 from x_1");

  for (std::size_t n = 1; n <= 25; ++n) {
    const auto trunc = chain.prefix(2 * n, 2 * n + 1);
    const auto v = is_tight(trunc);
    t.expect(!v.tight() && v.witness->x == SparseVector{{2 * n, 1}, {2 * n + 1, -1}},
             "truncation 2n=" + std::to_string(2 * n) + " witness");
  }
  return t.outcome("k=50 injection prefix-stable, impediment (x_{j+1},eq_j)+x_1 on 40 prefixes, ray found, "
                   "25 truncations NotTight with e_2n - e_2n+1");
}

Outcome criterion6() {
  Tally t;
  std::size_t graphs = 0;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t w = 1; w <= 4; ++w) {
      for (std::uint32_t mask = 0; mask < (1u << (m * w)); ++mask) {
        BipartiteGraph g(m, w);
        for (Index a = 1; a <= m; ++a)
          for (Index b = 1; b <= w; ++b)
            if (mask & (1u << ((a - 1) * w + (b - 1)))) g.add_edge(a, b);
        ++graphs;
        const auto cert = find_ps_obstruction_finite(g);
        t.expect(oracle_espousable(g) == !cert.has_value(), "graph " + tag(mask, m, w));
        if (cert) g_criticality.record(g, cert->impediment.wave, "graph " + tag(mask, m, w));
        if (m <= 3 && w <= 3) {
          for (const auto& f : oracle_all_matchings(g)) {
            if (is_wave(g, f)) g_criticality.record(g, f, "wave of " + tag(mask, m, w));
          }
        }
      }
    }
  }
  std::mt19937_64 rng(6);
  const std::size_t exhaustive = graphs;
  for (int round = 0; round < 2000; ++round) {
    const std::size_t m = 1 + rng() % 7;
    const std::size_t w = 1 + rng() % 7;
    const std::uint64_t density = 1 + rng() % 3;  // edge probability density/4
    BipartiteGraph g(m, w);
    for (Index a = 1; a <= m; ++a)
      for (Index b = 1; b <= w; ++b)
        if (rng() % 4 < density) g.add_edge(a, b);
    ++graphs;
    const auto cert = find_ps_obstruction_finite(g);
    t.expect(oracle_espousable(g) == !cert.has_value(), "random graph #" + std::to_string(round));
    if (cert) g_criticality.record(g, cert->impediment.wave, "random graph #" + std::to_string(round));
  }
  return t.outcome(std::to_string(exhaustive) + " exhaustive + " + std::to_string(graphs - exhaustive) +
                   " random graphs, zero disagreements");
}

Outcome criterion7() {
  std::vector<FiniteMatrix> all = tight_corpus();
  for (auto& m : sparse_corpus()) all.push_back(std::move(m));
  for (std::size_t n = 1; n <= 6; ++n) {
    all.push_back(family_donjuan().prefix(n, n + 1));
    all.push_back(family_impediment_chain().prefix(2 * n, 2 * n + 1));
  }
  std::size_t certificates = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto cert = find_ps_obstruction_finite(graph_from_matrix(all[k]));
    if (!cert) continue;
    ++certificates;
    if (is_tight(all[k]).tight()) {
      std::cout << "FAIL criterion 7: COUNTEREXAMPLE, tight matrix #" << k << " has a PS-obstruction\n"
                << format_matrix(all[k]) << std::flush;
      std::abort();
    }
  }
  return {true, std::to_string(all.size()) + " matrices, " + std::to_string(certificates) +
                    " obstructed graphs, every one non-tight"};
}

Outcome criterion8() {
  if (g_criticality.disagreements != 0) {
    return {false, std::to_string(g_criticality.disagreements) + " disagreements, first at " + g_criticality.first};
  }
  if (g_criticality.pairs == 0) return {false, "no (G, F) pairs were collected"};
  return {true, std::to_string(g_criticality.pairs) +
                    " (G, F) pairs: enumeration, alternating paths and oracle agree"};
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& command) {
  Shell r{-1, {}};
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome criterion9() {
  Tally t;
  const auto dir = std::filesystem::temp_directory_path() / "tightload_acceptance";
  std::filesystem::create_directories(dir);
  const auto identity = dir / "identity.rfs";
  std::ofstream(identity, std::ios::binary) << "rfs-matrix 1\nrows 2 cols 2\n1 1 1\n2 2 1\n";

  const std::string cli = std::string("'") + TIGHTLOAD_CLI + "'";
  const std::string env = "env -u TL_BUDGET_DEFAULT ";
  struct Case {
    std::string args;
    int code;
    std::string expected;  // exact stdout
  };
  const std::vector<Case> cases = {
      {"check-tight '" + identity.string() + "' --json", 0,
       "{\"v\":1,\"kind\":\"tight\",\"rows\":2,\"cols\":2}\n"},
      {"inject --lazy --cols 4 impediment-chain --json", 0,
       "{\"v\":1,\"kind\":\"injection\",\"pairs\":[[1,1],[2,2],[3,3],[4,4]],\"partial\":true,\"rows_consumed\":6}\n"},
      {"inject --lazy --cols 1 --budget 100 donjuan --json", 2,
       "{\"v\":1,\"kind\":\"exhausted\",\"step\":1,\"rows_consumed\":100,\"stream_ended\":false}\n"},
  };
  for (const auto& c : cases) {
    const auto first = shell(env + cli + " " + c.args);
    const auto second = shell(env + cli + " " + c.args);
    t.expect(first.code == c.code, c.args + ": exit " + std::to_string(first.code));
    t.expect(first.out == c.expected, c.args + ": output " + first.out);
    t.expect(first.code == second.code && first.out == second.out, c.args + ": second run differs");
  }
  // The injection certificate must re-verify through the CLI.
  const auto cert = dir / "chain.json";
  std::ofstream(cert, std::ios::binary) << cases[1].expected;
  const auto v = shell(env + cli + " verify impediment-chain '" + cert.string() + "'");
  t.expect(v.code == 0, "injection certificate did not re-verify");
  return t.outcome("3 commands x 2 runs: exit codes 0/0/2 and certificates byte-identical");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tight implies loaded, finite scale", criterion1},
      {"tightness equivalences", criterion2},
      {"proud diagonalization", criterion3},
      {"donjuan behaviour", criterion4},
      {"impediment-chain behaviour", criterion5},
      {"espousable iff unobstructed", criterion6},
      {"obstruction implies non-tight", criterion7},
      {"criticality cross-validation", criterion8},
      {"CLI contract", criterion9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
              << "): " << o.detail << '\n'
              << std::flush;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
