#include "tightload/loader.hpp"

#include <stdexcept>

#include "tightload/elimination.hpp"

namespace tightload {
namespace {

// Smallest row outside `used` with a nonzero coefficient and a nonzero entry
// in column j. Existence follows from e_j = sum(lambda_i * row_i) with the
// used rows equal to unit vectors of other columns.
Index choose_row(const SparseVector& lambda, const std::set<Index>& used, Index j,
                 const std::function<const SparseVector&(Index)>& row) {
  for (const auto& [i, coefficient] : lambda) {
    if (used.count(i) != 0) continue;
    if (row(i).contains(j)) return i;
  }
  throw std::logic_error("no usable row for column " + std::to_string(j) +
                         ": combination contradicts the elimination invariant");
}

template <typename RowSource>
bool injection_is_loading(const RowSource& row, const Injection& phi) {
  std::set<Index> targets;
  for (const auto& [j, i] : phi.phi) {
    if (j == 0 || i == 0) return false;
    if (!targets.insert(i).second) return false;
    if (!row(i).contains(j)) return false;
  }
  return true;
}

SparseVector combine(const FiniteMatrix& b, const SparseVector& coeffs) {
  SparseVector out;
  for (const auto& [k, c] : coeffs) out.axpy(c, b.row(k));
  return out;
}

}  // namespace

EliminationState::EliminationState(RowFetch fetch) : fetch_(std::move(fetch)) {}

bool EliminationState::pull() {
  if (source_ended_) return false;
  auto row = fetch_(rows_.size() + 1);
  if (!row) {
    source_ended_ = true;
    return false;
  }
  rows_.push_back(std::move(*row));
  return true;
}

std::optional<Index> EliminationState::step(std::size_t row_budget) {
  const Index j = steps_done() + 1;
  RowSpan span;
  for (Index i = 1; i <= rows_.size(); ++i) span.add_row(i, rows_[i - 1]);
  auto query = span.start(SparseVector::unit(j));
  span.reduce(query);
  std::size_t pulled = 0;
  while (!query.complete() && pulled < row_budget) {
    if (!pull()) break;
    ++pulled;
    if (span.add_row(rows_.size(), rows_.back())) span.reduce(query);
  }
  if (!query.complete()) return std::nullopt;

  const Index i = choose_row(query.coeffs, used_, j, [this](Index r) -> const SparseVector& { return rows_[r - 1]; });
  injection_.phi.emplace(j, i);
  used_.insert(i);
  rows_[i - 1] = SparseVector::unit(j);
  last_combination_ = RowCombination{j, std::move(query.coeffs)};
  return i;
}

FiniteMatrix EliminationState::current_rows() const {
  std::size_t cols = 0;
  for (const auto& r : rows_) {
    if (!r.empty()) cols = std::max(cols, r.max_index());
  }
  return FiniteMatrix(cols, rows_);
}

FiniteInjectionResult construct_injection_finite(const FiniteMatrix& a) {
  EliminationState state([&a](Index i) -> std::optional<SparseVector> {
    if (i > a.n_rows()) return std::nullopt;
    return a.row(i);
  });
  for (Index j = 1; j <= a.n_cols(); ++j) {
    if (!state.step(a.n_rows())) {
      auto witness = non_stubborn_witness(a, j);
      if (!witness) throw std::logic_error("column reported non-stubborn but no kernel vector found");
      return *witness;
    }
  }
  return state.injection();
}

LazyInjectionResult construct_injection_lazy(const LazyMatrix& a, std::size_t k, std::size_t budget) {
  if (k < 1) throw std::invalid_argument("construct_injection_lazy: k must be >= 1");
  if (budget < 1) throw std::invalid_argument("construct_injection_lazy: budget must be >= 1");
  EliminationState state([&a](Index i) -> std::optional<SparseVector> {
    if (!a.has_row(i)) return std::nullopt;
    return a.row(i);
  });
  for (Index j = 1; j <= k; ++j) {
    if (!state.step(budget)) return InjectionExhausted{j, state.rows_pulled(), state.source_ended()};
  }
  return PartialInjection{state.injection(), state.rows_pulled()};
}

bool verify_injection(const FiniteMatrix& a, const Injection& phi) {
  for (const auto& [j, i] : phi.phi) {
    if (i > a.n_rows() || j > a.n_cols()) return false;
  }
  return injection_is_loading([&a](Index i) -> const SparseVector& { return a.row(i); }, phi);
}

bool verify_injection(const LazyMatrix& a, const Injection& phi) {
  return injection_is_loading([&a](Index i) { return a.row(i); }, phi);
}

std::size_t DiagonalizationTrace::operation_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.ops.size();
  return n;
}

const FiniteMatrix* DiagonalizationTrace::final_checkpoint() const {
  return steps.empty() ? nullptr : &steps.back().checkpoint;
}

DiagonalizationResult proudly_diagonalize(const FiniteMatrix& a, std::size_t k) {
  if (k > a.n_cols()) throw std::invalid_argument("proudly_diagonalize: k exceeds the column count");
  DiagonalizationTrace trace;
  FiniteMatrix b = a;
  for (Index j = 1; j <= k; ++j) {
    TraceStep step{j, {}, {}};
    RowSpan span;
    for (Index i = 1; i <= b.n_rows(); ++i) span.add_row(i, b.row(i));
    auto query = span.start(SparseVector::unit(j));
    span.reduce(query);
    if (!query.complete()) {
      auto witness = non_stubborn_witness(a, j);
      if (!witness) throw std::logic_error("column reported non-stubborn but no kernel vector found");
      return *witness;
    }
    // Rows 1..j-1 already hold e_1..e_{j-1}; the rest are original rows.
    std::set<Index> fixed;
    for (Index i = 1; i < j; ++i) fixed.insert(i);
    const Index r = choose_row(query.coeffs, fixed, j, [&b](Index i) -> const SparseVector& { return b.row(i); });
    const SparseVector target = SparseVector::unit(j);
    if (b.row(r) != target) {
      step.ops.emplace_back(ReplaceRow{r, query.coeffs});
      b.set_row(r, target);
    }
    if (r != j) {
      step.ops.emplace_back(SwapRows{r, j});
      b.swap_rows(r, j);
    }
    if (j == a.n_cols()) {
      for (Index i = j + 1; i <= b.n_rows(); ++i) {
        if (b.row(i).empty()) continue;
        SparseVector coeffs = SparseVector::unit(i);
        for (const auto& [col, value] : b.row(i)) coeffs.set(col, -value);
        step.ops.emplace_back(ReplaceRow{i, std::move(coeffs)});
        b.set_row(i, SparseVector{});
      }
    }
    step.checkpoint = b;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

TraceVerdict verify_trace(const FiniteMatrix& a, const DiagonalizationTrace& trace) {
  FiniteMatrix b = a;
  const FiniteMatrix* previous = &a;
  Index last_step = 0;
  for (const auto& step : trace.steps) {
    const std::string where = "step " + std::to_string(step.step) + ": ";
    if (step.step <= last_step) return {false, where + "steps out of order"};
    last_step = step.step;
    for (const auto& op : step.ops) {
      if (const auto* swap = std::get_if<SwapRows>(&op)) {
        if (swap->first == 0 || swap->second == 0 || swap->first > b.n_rows() || swap->second > b.n_rows()) {
          return {false, where + "swap names a missing row"};
        }
        b.swap_rows(swap->first, swap->second);
        continue;
      }
      const auto& replace = std::get<ReplaceRow>(op);
      if (replace.row == 0 || replace.row > b.n_rows()) return {false, where + "replace names a missing row"};
      if (!replace.coeffs.contains(replace.row)) {
        return {false, where + "row " + std::to_string(replace.row) + " has zero coefficient in its replacement"};
      }
      if (!replace.coeffs.empty() && replace.coeffs.max_index() > b.n_rows()) {
        return {false, where + "replacement combines a missing row"};
      }
      b.set_row(replace.row, combine(b, replace.coeffs));
    }
    if (!(b == step.checkpoint)) return {false, where + "replay does not reproduce the checkpoint"};
    const Index keep = std::min<Index>(step.step - 1, b.n_rows());
    for (Index i = 1; i <= keep && i <= previous->n_rows(); ++i) {
      if (step.checkpoint.row(i) != previous->row(i)) {
        return {false, where + "row " + std::to_string(i) + " differs from the previous checkpoint"};
      }
    }
    previous = &step.checkpoint;
  }
  return {};
}

bool is_proudly_diagonal(const FiniteMatrix& b) {
  if (b.n_cols() > b.n_rows()) return false;
  for (Index i = 1; i <= b.n_rows(); ++i) {
    const auto& row = b.row(i);
    if (i <= b.n_cols()) {
      if (row.size() != 1 || !row.contains(i)) return false;
    } else if (!row.empty()) {
      return false;
    }
  }
  return true;
}

}  // namespace tightload
