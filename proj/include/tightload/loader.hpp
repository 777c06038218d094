#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tightload/tightness.hpp"

namespace tightload {

// Column -> row map. A loading injection is injective with a_{phi(j),j} != 0.
struct Injection {
  std::map<Index, Index> phi;

  friend bool operator==(const Injection&, const Injection&) = default;
};

// Injection on columns 1..k of a lazily streamed matrix.
struct PartialInjection {
  Injection injection;
  std::size_t rows_consumed = 0;
};

// Step `step` could not find e_step in the span of the rows pulled so far.
// When stream_ended is set the stream was finite and fully read, so the
// column is genuinely not stubborn.
struct InjectionExhausted {
  Index step = 0;
  std::size_t rows_consumed = 0;
  bool stream_ended = false;
};

using FiniteInjectionResult = std::variant<Injection, KernelWitness>;
using LazyInjectionResult = std::variant<PartialInjection, InjectionExhausted>;

// State A^(j) of the inductive construction. Rows phi(1..j) have been
// overwritten by e_1..e_j in place (no physical permutation); every other row
// is still the original A_i. Rows are pulled from the source on demand.
class EliminationState {
 public:
  // Returns the row, or nullopt past the end of the source.
  using RowFetch = std::function<std::optional<SparseVector>(Index)>;

  explicit EliminationState(RowFetch fetch);

  // Builds phi(j+1). Pulls at most `row_budget` new rows while e_{j+1} is not
  // yet spanned. Returns the chosen row, or nullopt when the budget or the
  // source ran out (state is unchanged apart from the pulled rows).
  std::optional<Index> step(std::size_t row_budget);

  Index steps_done() const { return static_cast<Index>(injection_.phi.size()); }
  std::size_t rows_pulled() const { return rows_.size(); }
  bool source_ended() const { return source_ended_; }
  const Injection& injection() const { return injection_; }
  // Current rows A^(j) restricted to the pulled prefix.
  FiniteMatrix current_rows() const;
  // The coefficients used at the most recent successful step.
  const RowCombination& last_combination() const { return last_combination_; }

 private:
  bool pull();

  RowFetch fetch_;
  std::vector<SparseVector> rows_;  // rows_[i-1] is the current row i
  std::set<Index> used_;
  Injection injection_;
  RowCombination last_combination_;
  bool source_ended_ = false;
};

FiniteInjectionResult construct_injection_finite(const FiniteMatrix& a);
// Throws std::invalid_argument if k < 1 or budget < 1.
LazyInjectionResult construct_injection_lazy(const LazyMatrix& a, std::size_t k, std::size_t budget);

bool verify_injection(const FiniteMatrix& a, const Injection& phi);
// Throws RowUnavailable if phi names a row past the end of a finite stream.
bool verify_injection(const LazyMatrix& a, const Injection& phi);

struct SwapRows {
  Index first = 0;
  Index second = 0;
  friend bool operator==(const SwapRows&, const SwapRows&) = default;
};

// Row `row` := sum_k coeffs(k) * row k; legal only if coeffs(row) != 0.
struct ReplaceRow {
  Index row = 0;
  SparseVector coeffs;
  friend bool operator==(const ReplaceRow&, const ReplaceRow&) = default;
};

using RowOperation = std::variant<SwapRows, ReplaceRow>;

struct TraceStep {
  Index step = 0;
  std::vector<RowOperation> ops;
  FiniteMatrix checkpoint;  // B^(step)
};

struct DiagonalizationTrace {
  std::vector<TraceStep> steps;

  std::size_t operation_count() const;
  // B^(k) of the last recorded step, or nullopt for an empty trace.
  const FiniteMatrix* final_checkpoint() const;
};

using DiagonalizationResult = std::variant<DiagonalizationTrace, KernelWitness>;

// Fixes rows 1..k to e_1..e_k by elementary row operations. With k == n_cols
// the rows below n_cols are also cleared, so a tight matrix ends proudly
// diagonal. Steps needing no operation are still checkpointed.
// Throws std::invalid_argument if k > n_cols.
DiagonalizationResult proudly_diagonalize(const FiniteMatrix& a, std::size_t k);

struct TraceVerdict {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

// Replays every operation from A, checking legality, that each checkpoint is
// reproduced, and that B^(k) keeps the first k-1 rows of B^(k-1).
TraceVerdict verify_trace(const FiniteMatrix& a, const DiagonalizationTrace& trace);

// Diagonal over J = 1..n_cols inside I = 1..n_rows with nonzero diagonal.
bool is_proudly_diagonal(const FiniteMatrix& b);

}  // namespace tightload
