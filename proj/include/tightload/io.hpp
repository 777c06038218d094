#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tightload/corpus.hpp"
#include "tightload/loader.hpp"
#include "tightload/marriage.hpp"

namespace tightload {

// Text matrix format:
//
//   rfs-matrix 1
//   rows <n|lazy:FAMILY[:PARAMS]> cols <m|lazy>
//   <i> <j> <rational>        (one nonzero entry per line, 1-based)
//
// Blank lines and lines starting with '#' are ignored. Explicit zeros and
// repeated (i, j) pairs are rejected.
class MatrixParseError : public ParseError {
 public:
  MatrixParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

FamilyMatrix parse_matrix_text(std::string_view text);
FamilyMatrix parse_matrix_file(const std::filesystem::path& path);
std::string format_matrix(const FiniteMatrix& a);
std::string format_lazy_header(const FamilySpec& spec);

// Certificates as JSON. Every document carries "v": 1 and a "kind".
using Json = nlohmann::ordered_json;

inline constexpr int kCertificateVersion = 1;

Json to_json(const SparseVector& v);
SparseVector sparse_vector_from_json(const Json& j);

Json to_json(const RowCombination& c);
Json to_json(const KernelWitness& w);
Json to_json(const Injection& phi);
Json to_json(const PartialInjection& p);
Json to_json(const InjectionExhausted& e);
Json to_json(const LeftInverse& z);
Json to_json(const DiagonalizationTrace& t);
Json to_json(const Matching& m);
Json to_json(const ObstructionCertificate& c);
Json to_json(const LazyObstructionReport& r);
Json hall_violator_json(const BipartiteGraph& g, const std::vector<Index>& t);
Json to_json(const EspousalFailure& f);
Json to_json(const PartialMatching& p);

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throw CertificateError on a wrong kind, version or shape.
RowCombination row_combination_from_json(const Json& j);
KernelWitness kernel_witness_from_json(const Json& j);
Injection injection_from_json(const Json& j);
LeftInverse left_inverse_from_json(const Json& j);
DiagonalizationTrace trace_from_json(const Json& j);
Matching matching_from_json(const Json& j);
ObstructionCertificate obstruction_from_json(const Json& j);

}  // namespace tightload
