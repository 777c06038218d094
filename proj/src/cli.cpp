#include "tightload/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "tightload/io.hpp"

namespace tightload::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kVerbs = {"check-tight", "inject", "left-inverse", "diagonalize", "graph",
                                      "obstruct",    "espouse", "family",      "verify"};
const std::set<std::string> kLazyVerbs = {"check-tight", "inject", "graph", "obstruct", "espouse"};

struct Options {
  std::string verb;
  std::string input;
  std::string certificate;
  bool lazy = false;
  bool json = false;
  std::optional<std::size_t> cols;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> steps;
  std::optional<std::string> dot;
  std::optional<std::uint64_t> seed;
};

struct Output {
  std::ostream& out;
  bool json;

  void emit(const Json& j, const std::string& text) const {
    if (json) {
      out << j.dump() << '\n';
    } else {
      out << text;
    }
  }
};

std::string pairs_text(const std::map<Index, Index>& pairs, const std::string& arrow) {
  std::ostringstream os;
  for (const auto& [a, b] : pairs) os << "  " << a << arrow << b << '\n';
  return os.str();
}

std::string witness_text(const KernelWitness& w) {
  return "not tight: x = " + w.x.to_string() + " solves A x = 0 with x_" + std::to_string(w.index) + " = 1\n";
}

FamilyMatrix load_input(const Options& o) {
  if (std::filesystem::is_regular_file(o.input)) {
    if (o.seed) throw UsageError("--seed applies to family specs, not files");
    return parse_matrix_file(o.input);
  }
  std::string text = o.input;
  if (text.rfind("lazy:", 0) == 0) text = text.substr(5);
  FamilySpec spec;
  try {
    spec = FamilySpec::parse(text);
    if (o.seed) spec.seed = *o.seed;
    return instantiate(spec);
  } catch (const UnknownFamily& e) {
    throw UsageError("'" + o.input + "' is neither a readable file nor a family spec (" + e.what() + ")");
  }
}

// Applies the verb's view of the input: finite, or lazy under --lazy.
struct Input {
  std::optional<FiniteMatrix> finite;
  std::optional<LazyMatrix> lazy;
};

Input shape_input(const Options& o, FamilyMatrix m) {
  Input in;
  if (o.lazy) {
    if (auto* f = std::get_if<FiniteMatrix>(&m)) {
      in.lazy = LazyMatrix::from_finite(*f);
    } else {
      in.lazy = std::get<LazyMatrix>(m);
    }
    return in;
  }
  if (auto* l = std::get_if<LazyMatrix>(&m)) {
    if (kLazyVerbs.count(o.verb) != 0) throw UsageError("input '" + l->name() + "' is lazy; pass --lazy");
    throw UsageError("'" + o.verb + "' needs a finite matrix, got lazy input '" + l->name() + "'");
  }
  in.finite = std::get<FiniteMatrix>(std::move(m));
  return in;
}

void validate(const Options& o) {
  const bool lazy_verb = kLazyVerbs.count(o.verb) != 0;
  if (o.lazy && !lazy_verb) throw UsageError("--lazy is not available for '" + o.verb + "'");
  if ((o.cols || o.budget) && !o.lazy) throw UsageError("--cols and --budget need --lazy");
  if (o.cols && (o.verb == "graph" || o.verb == "obstruct")) throw UsageError("--cols is not used by '" + o.verb + "'");
  if (o.lazy && !o.cols && (o.verb == "check-tight" || o.verb == "inject" || o.verb == "espouse")) {
    throw UsageError("'" + o.verb + " --lazy' needs --cols K");
  }
  if (o.cols && *o.cols == 0) throw UsageError("--cols must be positive");
  if (o.budget && *o.budget == 0) throw UsageError("--budget must be positive");
  if (o.steps && !(o.verb == "diagonalize" || o.verb == "family" || (o.verb == "obstruct" && o.lazy))) {
    throw UsageError("--steps is not used by '" + o.verb + "'");
  }
  if (o.dot && o.verb != "graph") throw UsageError("--dot is only for 'graph'");
  if (o.json && o.verb == "family") throw UsageError("'family' writes matrix text, not JSON");
  if (o.verb == "verify" && o.certificate.empty()) throw UsageError("'verify' needs a certificate path");
  if (o.verb != "verify" && !o.certificate.empty()) throw UsageError("unexpected extra argument '" + o.certificate + "'");
}

int check_tight(const Options& o, const Input& in, const Output& out) {
  if (in.finite) {
    const auto verdict = is_tight(*in.finite);
    if (verdict.tight()) {
      out.emit(Json{{"v", kCertificateVersion}, {"kind", "tight"}, {"rows", in.finite->n_rows()},
                    {"cols", in.finite->n_cols()}},
               "tight: kernel is trivial\n");
      return kAffirmative;
    }
    out.emit(to_json(*verdict.witness), witness_text(*verdict.witness));
    return kNegative;
  }
  // Lazy: each requested column must be shown stubborn from finitely many rows.
  const std::size_t budget = o.budget.value_or(default_budget());
  Json columns = Json::array();
  std::ostringstream text;
  int code = kAffirmative;
  for (Index j = 1; j <= *o.cols; ++j) {
    const auto r = stubborn_search_lazy(*in.lazy, j, budget);
    if (const auto* found = std::get_if<StubbornFound>(&r)) {
      columns.push_back(to_json(found->combination));
      text << "  x_" << j << " stubborn: e_" << j << " = " << found->combination.coeffs.to_string() << " . rows\n";
    } else {
      const auto& ex = std::get<StubbornExhausted>(r);
      columns.push_back(Json{{"v", kCertificateVersion}, {"kind", "exhausted"}, {"step", j},
                             {"rows_consumed", ex.rows_consumed}, {"stream_ended", ex.stream_ended}});
      text << "  x_" << j << " undecided after " << ex.rows_consumed << " rows\n";
      code = kUndecided;
    }
  }
  Json j{{"v", kCertificateVersion}, {"kind", "stubborn-columns"}, {"partial", true}, {"columns", columns}};
  out.emit(j, (code == kAffirmative ? "columns 1.." + std::to_string(*o.cols) + " stubborn\n"
                                    : std::string("undecided\n")) + text.str());
  return code;
}

int inject(const Options& o, const Input& in, const Output& out) {
  if (in.finite) {
    const auto r = construct_injection_finite(*in.finite);
    if (const auto* phi = std::get_if<Injection>(&r)) {
      out.emit(to_json(*phi), "loaded: phi (column -> row)\n" + pairs_text(phi->phi, " -> "));
      return kAffirmative;
    }
    const auto& w = std::get<KernelWitness>(r);
    out.emit(to_json(w), witness_text(w));
    return kNegative;
  }
  const std::size_t budget = o.budget.value_or(default_budget());
  const auto r = construct_injection_lazy(*in.lazy, *o.cols, budget);
  if (const auto* p = std::get_if<PartialInjection>(&r)) {
    out.emit(to_json(*p), "partial injection over columns 1.." + std::to_string(*o.cols) + " (" +
                              std::to_string(p->rows_consumed) + " rows consumed)\n" +
                              pairs_text(p->injection.phi, " -> "));
    return kAffirmative;
  }
  const auto& ex = std::get<InjectionExhausted>(r);
  out.emit(to_json(ex), "undecided: column " + std::to_string(ex.step) + " not placed after " +
                            std::to_string(ex.rows_consumed) + " rows" +
                            (ex.stream_ended ? " (stream ended)" : "") + "\n");
  return kUndecided;
}

int left_inverse_verb(const Input& in, const Output& out) {
  if (auto z = left_inverse(*in.finite)) {
    out.emit(to_json(*z), "# left inverse Z with Z A = I\n" + format_matrix(z->z));
    return kAffirmative;
  }
  const auto w = *is_tight(*in.finite).witness;
  out.emit(to_json(w), witness_text(w));
  return kNegative;
}

int diagonalize(const Options& o, const Input& in, const Output& out) {
  const std::size_t k = o.steps.value_or(in.finite->n_cols());
  if (k > in.finite->n_cols()) throw UsageError("--steps exceeds the column count");
  const auto r = proudly_diagonalize(*in.finite, k);
  if (const auto* w = std::get_if<KernelWitness>(&r)) {
    out.emit(to_json(*w), witness_text(*w));
    return kNegative;
  }
  const auto& trace = std::get<DiagonalizationTrace>(r);
  std::ostringstream text;
  text << "reduced in " << trace.steps.size() << " steps, " << trace.operation_count() << " row operations\n";
  for (const auto& s : trace.steps) {
    text << "step " << s.step << ":";
    for (const auto& op : s.ops) {
      if (const auto* sw = std::get_if<SwapRows>(&op)) {
        text << " swap(" << sw->first << "," << sw->second << ")";
      } else {
        const auto& rp = std::get<ReplaceRow>(op);
        text << " row" << rp.row << "<-" << rp.coeffs.to_string();
      }
    }
    text << '\n';
  }
  if (const auto* b = trace.final_checkpoint()) text << "# final checkpoint\n" << format_matrix(*b);
  out.emit(to_json(trace), text.str());
  return kAffirmative;
}

BipartiteGraph graph_of(const Options& o, const Input& in) {
  if (in.finite) return graph_from_matrix(*in.finite);
  return LazyBipartiteGraph::from_matrix(*in.lazy).window(o.budget.value_or(default_budget()));
}

int graph(const Options& o, const Input& in, const Output& out) {
  const auto g = graph_of(o, in);
  const auto m = max_matching(g);
  const std::string dot = to_dot(g, &m);
  if (o.dot) {
    std::ofstream f(*o.dot, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + *o.dot + "'");
    f << dot;
    out.emit(to_json(m), "wrote " + *o.dot + "\n");
  } else if (out.json) {
    out.emit(to_json(m), "");
  } else {
    out.out << dot;
  }
  return kAffirmative;
}

int obstruct(const Options& o, const Input& in, const Output& out) {
  if (in.finite) {
    const auto g = graph_from_matrix(*in.finite);
    if (auto c = find_ps_obstruction_finite(g)) {
      out.emit(to_json(*c), "PS-obstruction: a = c" + std::to_string(c->impediment.a) + ", critical wave\n" +
                                pairs_text(c->impediment.wave.pairs(), " -- r"));
      return kNegative;
    }
    out.emit(Json{{"v", kCertificateVersion}, {"kind", "no-obstruction"}}, "no PS-obstruction\n");
    return kAffirmative;
  }
  const std::size_t rows = o.budget.value_or(default_budget());
  const auto report = find_ps_obstruction_lazy(LazyBipartiteGraph::from_matrix(*in.lazy), rows, o.steps.value_or(20));
  std::string text = "undecided after " + std::to_string(report.explored_rows) + " rows: ";
  if (!report.impediment) {
    text += "no impediment in the window\n";
  } else if (report.ray) {
    text += "impediment at c" + std::to_string(report.impediment->a) + ", wave refuted by an alternating ray\n";
  } else {
    text += "impediment at c" + std::to_string(report.impediment->a) + ", no ray within " +
            std::to_string(report.ray_bound) + " steps\n";
  }
  out.emit(to_json(report), text);
  return kUndecided;
}

int espouse(const Options& o, const Input& in, const Output& out) {
  if (in.finite) {
    const auto g = graph_from_matrix(*in.finite);
    const auto m = max_matching(g);
    if (m.size() == g.m_vertices().size()) {
      out.emit(to_json(m), "espousable: matching (column -- row)\n" + pairs_text(m.pairs(), " -- "));
      return kAffirmative;
    }
    const auto t = *hall_violator(g);
    Json j = hall_violator_json(g, t);
    if (auto c = find_ps_obstruction_finite(g)) j["obstruction"] = to_json(*c);
    std::ostringstream text;
    text << "not espousable: " << t.size() << " columns share " << j["neighbors"].size() << " rows\n";
    out.emit(j, text.str());
    return kNegative;
  }
  const std::size_t budget = o.budget.value_or(default_budget());
  const auto r = espouse_lazy(LazyBipartiteGraph::from_matrix(*in.lazy), *o.cols, budget);
  if (const auto* p = std::get_if<PartialMatching>(&r)) {
    out.emit(to_json(*p), "matched columns 1.." + std::to_string(*o.cols) + " (" +
                              std::to_string(p->rows_explored) + " rows explored)\n" +
                              pairs_text(p->matching.pairs(), " -- "));
    return kAffirmative;
  }
  const auto& f = std::get<EspousalFailure>(r);
  out.emit(to_json(f), "failed at stage " + std::to_string(f.stage) + " (c" + std::to_string(f.m) + "): " +
                           to_string(f.reason) + "\n");
  return f.reason == EspousalFailure::Reason::kBudgetExceeded ? kUndecided : kNegative;
}

int family(const Options& o, const FamilyMatrix& m, std::ostream& out) {
  if (const auto* f = std::get_if<FiniteMatrix>(&m)) {
    out << format_matrix(*f);
    return kAffirmative;
  }
  const auto& l = std::get<LazyMatrix>(m);
  if (o.steps) {
    out << format_matrix(l.prefix(*o.steps));
    return kAffirmative;
  }
  std::string text = o.input;
  if (text.rfind("lazy:", 0) == 0) text = text.substr(5);
  out << format_lazy_header(FamilySpec::parse(text));
  return kAffirmative;
}

// Window graph used to check certificates about G_A.
BipartiteGraph verify_graph(const Input& in, std::size_t rows) {
  if (in.finite) return graph_from_matrix(*in.finite);
  return LazyBipartiteGraph::from_matrix(*in.lazy).window(rows);
}

std::size_t max_w(const Matching& m) {
  std::size_t top = 0;
  for (const auto& [a, w] : m.pairs()) top = std::max(top, w);
  return top;
}

bool check_obstruction(const BipartiteGraph& g, const Impediment& imp) {
  if (!is_matching_in(g, imp.wave) || !is_impediment(g, imp)) return false;
  return is_critical_wave_finite(g, imp.wave);
}

int verify(const Input& in, const Json& cert, const Output& out) {
  if (!cert.is_object() || !cert.contains("kind") || !cert["kind"].is_string()) {
    throw CertificateError("certificate has no kind");
  }
  const std::string kind = cert["kind"];
  const bool partial = cert.value("partial", false);
  const LazyMatrix lazy = in.lazy ? *in.lazy : LazyMatrix::from_finite(*in.finite);
  bool ok = false;
  std::string note;

  if (kind == "row-combination") {
    ok = verify_row_combination(lazy, row_combination_from_json(cert));
  } else if (kind == "kernel-witness") {
    if (!in.finite) throw UsageError("kernel witnesses need a finite matrix");
    ok = verify_kernel_witness(*in.finite, kernel_witness_from_json(cert));
  } else if (kind == "injection") {
    const auto phi = injection_from_json(cert);
    if (in.finite && !partial) {
      ok = phi.phi.size() == in.finite->n_cols() && verify_injection(*in.finite, phi);
    } else {
      ok = verify_injection(lazy, phi);
    }
  } else if (kind == "left-inverse") {
    if (!in.finite) throw UsageError("left inverses need a finite matrix");
    ok = verify_left_inverse(*in.finite, left_inverse_from_json(cert).z);
  } else if (kind == "diagonalization-trace") {
    if (!in.finite) throw UsageError("traces need a finite matrix");
    const auto verdict = verify_trace(*in.finite, trace_from_json(cert));
    ok = verdict.ok;
    note = verdict.diagnostic;
  } else if (kind == "matching") {
    const auto m = matching_from_json(cert);
    const auto g = verify_graph(in, max_w(m));
    ok = is_matching_in(g, m) && (partial || !in.finite || m.size() == g.m_vertices().size());
  } else if (kind == "ps-obstruction") {
    const auto c = obstruction_from_json(cert);
    if (!in.finite) throw UsageError("PS-obstructions are checked on finite matrices");
    ok = check_obstruction(graph_from_matrix(*in.finite), c.impediment);
  } else if (kind == "hall-violator") {
    if (!in.finite) throw UsageError("Hall violators are checked on finite matrices");
    const auto g = graph_from_matrix(*in.finite);
    const auto t = cert.at("set").get<std::vector<Index>>();
    const std::set<Index> ts(t.begin(), t.end());
    ok = !ts.empty();
    for (Index m : ts) ok = ok && g.has_m(m);
    ok = ok && g.neighbors_of_m_set(ts).size() < ts.size();
  } else if (kind == "stubborn-columns") {
    ok = true;
    bool undecided = false;
    for (const auto& c : cert.at("columns")) {
      if (c.value("kind", "") == "exhausted") {
        undecided = true;
        continue;
      }
      ok = ok && verify_row_combination(lazy, row_combination_from_json(c));
    }
    if (ok && undecided) {
      out.out << "valid so far; some columns are undecided\n";
      return kUndecided;
    }
  } else if (kind == "espousal-failure") {
    const auto rows = cert.at("rows_explored").get<std::size_t>();
    const auto reason = cert.at("reason").get<std::string>();
    if (reason == "budget-exceeded") {
      out.out << "undecided report, nothing to verify\n";
      return kUndecided;
    }
    Json mj{{"v", kCertificateVersion}, {"kind", "matching"}, {"pairs", cert.at("matched")}};
    const auto matched = matching_from_json(mj);
    const Index m = cert.at("m").get<Index>();
    auto g = verify_graph(in, rows);
    ok = is_matching_in(g, matched) && g.has_m(m) && !matched.covers_m(m);
    if (ok && reason == "collision") {
      // Every explored neighbour of m is taken, exactly as listed.
      std::set<std::pair<Index, Index>> listed;
      for (const auto& b : cert.at("blocked")) listed.emplace(b.at(0).get<Index>(), b.at(1).get<Index>());
      std::set<std::pair<Index, Index>> actual;
      for (Index w : g.neighbors_of_m(m)) {
        const auto p = matched.partner_of_w(w);
        if (!p) ok = false;
        else actual.emplace(w, *p);
      }
      ok = ok && !actual.empty() && listed == actual;
    } else if (ok && reason == "obstructed") {
      for (const auto& [a, w] : matched.pairs()) g.remove_w(w);
      ok = cert.contains("obstruction") && check_obstruction(g, obstruction_from_json(cert["obstruction"]).impediment);
    } else if (ok) {
      ok = false;
      note = "unknown reason '" + reason + "'";
    }
  } else if (kind == "exhausted" || kind == "lazy-obstruction-report" || kind == "no-obstruction" ||
             kind == "tight") {
    out.out << "'" << kind << "' is a verdict, not a certificate; nothing to verify\n";
    return kUndecided;
  } else {
    throw CertificateError("unknown certificate kind '" + kind + "'");
  }

  if (ok) {
    out.out << "valid " << kind << '\n';
    return kAffirmative;
  }
  out.out << "INVALID " << kind << (note.empty() ? "" : ": " + note) << '\n';
  return kNegative;
}

int dispatch(const Options& o, std::ostream& out) {
  validate(o);
  FamilyMatrix m = load_input(o);
  if (o.verb == "family") return family(o, m, out);

  Options shaped = o;
  if (o.verb == "verify") shaped.lazy = std::holds_alternative<LazyMatrix>(m);
  const Input in = shape_input(shaped, std::move(m));
  const Output sink{out, o.json};

  if (o.verb == "check-tight") return check_tight(o, in, sink);
  if (o.verb == "inject") return inject(o, in, sink);
  if (o.verb == "left-inverse") return left_inverse_verb(in, sink);
  if (o.verb == "diagonalize") return diagonalize(o, in, sink);
  if (o.verb == "graph") return graph(o, in, sink);
  if (o.verb == "obstruct") return obstruct(o, in, sink);
  if (o.verb == "espouse") return espouse(o, in, sink);

  std::ifstream f(o.certificate, std::ios::binary);
  if (!f) throw UsageError("cannot read certificate '" + o.certificate + "'");
  Json cert;
  try {
    cert = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("certificate is not JSON: ") + e.what());
  }
  return verify(in, cert, Output{out, false});
}

}  // namespace

std::size_t default_budget() {
  const char* env = std::getenv("TL_BUDGET_DEFAULT");
  if (env == nullptr) return kBuiltinBudget;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(env, &used);
    if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  return kBuiltinBudget;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tightness, loading and marriage certificates for row-finite rational matrices", "tightload"};
  Options o;
  std::size_t cols = 0;
  std::size_t budget = 0;
  std::size_t steps = 0;
  std::string dot;
  std::uint64_t seed = 0;
  app.add_option("verb", o.verb, "check-tight | inject | left-inverse | diagonalize | graph | obstruct | espouse | "
                                 "family | verify")
      ->required()
      ->check(CLI::IsMember(kVerbs));
  app.add_option("input", o.input, "rfs-matrix file or family spec (e.g. donjuan, random-tight:n=4)")->required();
  app.add_option("certificate", o.certificate, "certificate JSON (verify only)");
  app.add_flag("--lazy", o.lazy, "treat the input as a row stream");
  auto* cols_opt = app.add_option("--cols", cols, "number of leading columns to process (lazy)");
  auto* budget_opt = app.add_option("--budget", budget, "row budget (lazy; default TL_BUDGET_DEFAULT or 1000)");
  auto* steps_opt = app.add_option("--steps", steps, "diagonalization steps, prefix rows, or ray bound");
  auto* dot_opt = app.add_option("--dot", dot, "write the DOT graph here");
  app.add_flag("--json", o.json, "print certificate JSON");
  auto* seed_opt = app.add_option("--seed", seed, "seed for random families");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "tightload: " << e.what() << '\n';
    return kUsage;
  }
  if (cols_opt->count() != 0) o.cols = cols;
  if (budget_opt->count() != 0) o.budget = budget;
  if (steps_opt->count() != 0) o.steps = steps;
  if (dot_opt->count() != 0) o.dot = dot;
  if (seed_opt->count() != 0) o.seed = seed;

  try {
    return dispatch(o, out);
  } catch (const UsageError& e) {
    err << "tightload: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "tightload: " << o.input << ": " << e.what() << '\n';
  } catch (const CertificateError& e) {
    err << "tightload: malformed certificate: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "tightload: malformed certificate: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "tightload: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace tightload::cli
