#include "tightload/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace tightload {
namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::optional<std::size_t> parse_count(const std::string& s) {
  std::size_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void require(bool cond, const std::string& message) {
  if (!cond) throw CertificateError(message);
}

void require_kind(const Json& j, std::string_view kind) {
  require(j.is_object(), "certificate must be a JSON object");
  require(j.contains("v") && j["v"] == kCertificateVersion, "unsupported certificate version");
  require(j.contains("kind") && j["kind"] == kind, "expected certificate kind '" + std::string(kind) + "'");
}

Index index_from_json(const Json& j) {
  require(j.is_number_unsigned() && j.get<std::uint64_t>() >= 1, "indices must be positive integers");
  return j.get<Index>();
}

Index index_from_key(const std::string& key) {
  auto value = parse_count(key);
  require(value && *value >= 1, "malformed index key '" + key + "'");
  return *value;
}

Json pairs_json(const std::map<Index, Index>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
  return out;
}

Json matrix_rows_json(const FiniteMatrix& a) {
  Json rows = Json::array();
  for (const auto& r : a.rows()) rows.push_back(to_json(r));
  return Json{{"cols", a.n_cols()}, {"rows", rows}};
}

FiniteMatrix matrix_rows_from_json(const Json& j) {
  require(j.is_object() && j.contains("cols") && j.contains("rows") && j["rows"].is_array(), "malformed matrix");
  std::vector<SparseVector> rows;
  for (const auto& r : j["rows"]) rows.push_back(sparse_vector_from_json(r));
  try {
    return FiniteMatrix(j["cols"].get<std::size_t>(), std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw CertificateError(e.what());
  }
}

}  // namespace

MatrixParseError::MatrixParseError(std::size_t line, const std::string& message)
    : ParseError("line " + std::to_string(line) + ": " + message), line_(line) {}

FamilyMatrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  int header_lines = 0;
  std::optional<std::size_t> n_rows;
  std::optional<std::size_t> n_cols;
  std::optional<FamilySpec> lazy;
  std::vector<SparseVector> rows;
  std::set<std::pair<Index, Index>> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_cr(raw);
    const auto t = tokens(line);
    if (t.empty() || t.front().front() == '#') continue;
    if (header_lines == 0) {
      if (t.size() != 2 || t[0] != "rfs-matrix" || t[1] != "1") {
        throw MatrixParseError(line_no, "expected 'rfs-matrix 1'");
      }
      ++header_lines;
      continue;
    }
    if (header_lines == 1) {
      if (t.size() != 4 || t[0] != "rows" || t[2] != "cols") {
        throw MatrixParseError(line_no, "expected 'rows <n|lazy:FAMILY> cols <m|lazy>'");
      }
      if (t[1].rfind("lazy:", 0) == 0) {
        if (t[3] != "lazy") throw MatrixParseError(line_no, "a lazy row stream needs 'cols lazy'");
        try {
          lazy = FamilySpec::parse(t[1].substr(5));
        } catch (const UnknownFamily& e) {
          throw MatrixParseError(line_no, e.what());
        }
      } else {
        n_rows = parse_count(t[1]);
        n_cols = parse_count(t[3]);
        if (!n_rows || !n_cols || *n_rows == 0 || *n_cols == 0) {
          throw MatrixParseError(line_no, "row and column counts must be positive integers");
        }
        rows.resize(*n_rows);
      }
      ++header_lines;
      continue;
    }
    if (lazy) throw MatrixParseError(line_no, "entries are not allowed after a lazy header");
    if (t.size() != 3) throw MatrixParseError(line_no, "expected '<i> <j> <rational>'");
    const auto i = parse_count(t[0]);
    const auto j = parse_count(t[1]);
    if (!i || !j || *i == 0 || *j == 0) throw MatrixParseError(line_no, "indices must be positive integers");
    if (*i > *n_rows || *j > *n_cols) throw MatrixParseError(line_no, "entry outside the declared shape");
    Rational value;
    try {
      value = Rational::parse(t[2]);
    } catch (const ParseError& e) {
      throw MatrixParseError(line_no, e.what());
    }
    if (value.is_zero()) throw MatrixParseError(line_no, "explicit zero entry");
    if (!seen.emplace(*i, *j).second) throw MatrixParseError(line_no, "duplicate entry (" + t[0] + "," + t[1] + ")");
    rows[*i - 1].set(*j, value);
  }
  if (header_lines < 2) throw MatrixParseError(line_no + 1, "missing header");
  if (lazy) {
    try {
      return instantiate(*lazy);
    } catch (const UnknownFamily& e) {
      throw MatrixParseError(2, e.what());
    }
  }
  return FiniteMatrix(*n_cols, std::move(rows));
}

FamilyMatrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_text(buffer.str());
}

std::string format_matrix(const FiniteMatrix& a) {
  std::ostringstream os;
  os << "rfs-matrix 1\n";
  os << "rows " << a.n_rows() << " cols " << a.n_cols() << "\n";
  for (Index i = 1; i <= a.n_rows(); ++i) {
    for (const auto& [j, value] : a.row(i)) os << i << ' ' << j << ' ' << value << '\n';
  }
  return os.str();
}

std::string format_lazy_header(const FamilySpec& spec) {
  return "rfs-matrix 1\nrows lazy:" + spec.to_string() + " cols lazy\n";
}

Json to_json(const SparseVector& v) {
  Json out = Json::object();
  for (const auto& [j, value] : v) out[std::to_string(j)] = value.to_string();
  return out;
}

SparseVector sparse_vector_from_json(const Json& j) {
  require(j.is_object(), "sparse vector must be an object of index -> rational");
  SparseVector v;
  for (const auto& [key, value] : j.items()) {
    require(value.is_string(), "sparse vector values must be rational strings");
    try {
      const Rational r = Rational::parse(value.get<std::string>());
      require(!r.is_zero(), "sparse vector stores an explicit zero");
      v.set(index_from_key(key), r);
    } catch (const ParseError& e) {
      throw CertificateError(e.what());
    }
  }
  return v;
}

Json to_json(const RowCombination& c) {
  return Json{{"v", kCertificateVersion}, {"kind", "row-combination"}, {"target", c.target}, {"coeffs", to_json(c.coeffs)}};
}

Json to_json(const KernelWitness& w) {
  return Json{{"v", kCertificateVersion}, {"kind", "kernel-witness"}, {"index", w.index}, {"x", to_json(w.x)}};
}

Json to_json(const Injection& phi) {
  return Json{{"v", kCertificateVersion}, {"kind", "injection"}, {"pairs", pairs_json(phi.phi)}};
}

Json to_json(const PartialInjection& p) {
  Json out = to_json(p.injection);
  out["partial"] = true;
  out["rows_consumed"] = p.rows_consumed;
  return out;
}

Json to_json(const InjectionExhausted& e) {
  return Json{{"v", kCertificateVersion},
              {"kind", "exhausted"},
              {"step", e.step},
              {"rows_consumed", e.rows_consumed},
              {"stream_ended", e.stream_ended}};
}

Json to_json(const LeftInverse& z) {
  Json out{{"v", kCertificateVersion}, {"kind", "left-inverse"}};
  out["z"] = matrix_rows_json(z.z);
  return out;
}

Json to_json(const DiagonalizationTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json ops = Json::array();
    for (const auto& op : s.ops) {
      if (const auto* swap = std::get_if<SwapRows>(&op)) {
        ops.push_back(Json{{"op", "swap"}, {"rows", Json::array({swap->first, swap->second})}});
      } else {
        const auto& replace = std::get<ReplaceRow>(op);
        ops.push_back(Json{{"op", "replace"}, {"row", replace.row}, {"coeffs", to_json(replace.coeffs)}});
      }
    }
    steps.push_back(Json{{"step", s.step}, {"ops", ops}, {"checkpoint", matrix_rows_json(s.checkpoint)}});
  }
  return Json{{"v", kCertificateVersion}, {"kind", "diagonalization-trace"}, {"steps", steps}};
}

Json to_json(const Matching& m) {
  return Json{{"v", kCertificateVersion}, {"kind", "matching"}, {"pairs", pairs_json(m.pairs())}};
}

Json to_json(const ObstructionCertificate& c) {
  return Json{{"v", kCertificateVersion},
              {"kind", "ps-obstruction"},
              {"a", c.impediment.a},
              {"wave", pairs_json(c.impediment.wave.pairs())},
              {"partial", c.partial},
              {"explored_rows", c.explored_rows},
              {"explored_bound", c.explored_bound},
              {"evidence", c.evidence}};
}

Json to_json(const LazyObstructionReport& r) {
  Json out{{"v", kCertificateVersion}, {"kind", "lazy-obstruction-report"}, {"explored_rows", r.explored_rows},
           {"ray_bound", r.ray_bound}};
  if (r.impediment) {
    out["impediment"] = Json{{"a", r.impediment->a}, {"wave", pairs_json(r.impediment->wave.pairs())}};
  } else {
    out["impediment"] = nullptr;
  }
  if (r.ray) {
    out["ray"] = r.ray->vertices;
    out["critical_within_bound"] = false;
  } else {
    out["ray"] = nullptr;
    out["critical_within_bound"] = r.impediment.has_value();
  }
  return out;
}

Json hall_violator_json(const BipartiteGraph& g, const std::vector<Index>& t) {
  const auto n = g.neighbors_of_m_set(std::set<Index>(t.begin(), t.end()));
  return Json{{"v", kCertificateVersion},
              {"kind", "hall-violator"},
              {"set", t},
              {"neighbors", std::vector<Index>(n.begin(), n.end())}};
}

Json to_json(const EspousalFailure& f) {
  Json blocked = Json::array();
  for (const auto& [w, partner] : f.blocked) blocked.push_back(Json::array({w, partner}));
  Json out{{"v", kCertificateVersion},
           {"kind", "espousal-failure"},
           {"stage", f.stage},
           {"reason", to_string(f.reason)},
           {"m", f.m},
           {"blocked", blocked},
           {"matched", pairs_json(f.matched.pairs())},
           {"rows_explored", f.rows_explored}};
  if (f.obstruction) out["obstruction"] = to_json(*f.obstruction);
  return out;
}

Json to_json(const PartialMatching& p) {
  Json out = to_json(p.matching);
  out["partial"] = true;
  out["schedule"] = p.schedule;
  out["rows_explored"] = p.rows_explored;
  return out;
}

RowCombination row_combination_from_json(const Json& j) {
  require_kind(j, "row-combination");
  require(j.contains("target") && j.contains("coeffs"), "row-combination needs target and coeffs");
  return RowCombination{index_from_json(j["target"]), sparse_vector_from_json(j["coeffs"])};
}

KernelWitness kernel_witness_from_json(const Json& j) {
  require_kind(j, "kernel-witness");
  require(j.contains("index") && j.contains("x"), "kernel-witness needs index and x");
  return KernelWitness{sparse_vector_from_json(j["x"]), index_from_json(j["index"])};
}

Injection injection_from_json(const Json& j) {
  require_kind(j, "injection");
  require(j.contains("pairs") && j["pairs"].is_array(), "injection needs pairs");
  Injection phi;
  for (const auto& p : j["pairs"]) {
    require(p.is_array() && p.size() == 2, "injection pairs are [column, row]");
    require(phi.phi.emplace(index_from_json(p[0]), index_from_json(p[1])).second, "column mapped twice");
  }
  return phi;
}

LeftInverse left_inverse_from_json(const Json& j) {
  require_kind(j, "left-inverse");
  require(j.contains("z"), "left-inverse needs z");
  return LeftInverse{matrix_rows_from_json(j["z"])};
}

DiagonalizationTrace trace_from_json(const Json& j) {
  require_kind(j, "diagonalization-trace");
  require(j.contains("steps") && j["steps"].is_array(), "trace needs steps");
  DiagonalizationTrace t;
  for (const auto& s : j["steps"]) {
    require(s.is_object() && s.contains("step") && s.contains("ops") && s.contains("checkpoint"), "malformed step");
    TraceStep step;
    step.step = index_from_json(s["step"]);
    for (const auto& op : s["ops"]) {
      require(op.is_object() && op.contains("op"), "malformed operation");
      if (op["op"] == "swap") {
        require(op.contains("rows") && op["rows"].is_array() && op["rows"].size() == 2, "swap needs two rows");
        step.ops.emplace_back(SwapRows{index_from_json(op["rows"][0]), index_from_json(op["rows"][1])});
      } else if (op["op"] == "replace") {
        require(op.contains("row") && op.contains("coeffs"), "replace needs row and coeffs");
        step.ops.emplace_back(ReplaceRow{index_from_json(op["row"]), sparse_vector_from_json(op["coeffs"])});
      } else {
        throw CertificateError("unknown row operation");
      }
    }
    step.checkpoint = matrix_rows_from_json(s["checkpoint"]);
    t.steps.push_back(std::move(step));
  }
  return t;
}

Matching matching_from_json(const Json& j) {
  require_kind(j, "matching");
  require(j.contains("pairs") && j["pairs"].is_array(), "matching needs pairs");
  Matching m;
  for (const auto& p : j["pairs"]) {
    require(p.is_array() && p.size() == 2, "matching pairs are [m, w]");
    try {
      m.add(index_from_json(p[0]), index_from_json(p[1]));
    } catch (const NotAMatching& e) {
      throw CertificateError(e.what());
    }
  }
  return m;
}

ObstructionCertificate obstruction_from_json(const Json& j) {
  require_kind(j, "ps-obstruction");
  require(j.contains("a") && j.contains("wave") && j["wave"].is_array(), "ps-obstruction needs a and wave");
  ObstructionCertificate c;
  c.impediment.a = index_from_json(j["a"]);
  for (const auto& p : j["wave"]) {
    require(p.is_array() && p.size() == 2, "wave pairs are [m, w]");
    try {
      c.impediment.wave.add(index_from_json(p[0]), index_from_json(p[1]));
    } catch (const NotAMatching& e) {
      throw CertificateError(e.what());
    }
  }
  c.partial = j.value("partial", false);
  c.explored_rows = j.value("explored_rows", std::size_t{0});
  c.explored_bound = j.value("explored_bound", std::size_t{0});
  c.evidence = j.value("evidence", std::string{});
  return c;
}

}  // namespace tightload
