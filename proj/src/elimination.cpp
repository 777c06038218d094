#include "tightload/elimination.hpp"

#include <stdexcept>

namespace tightload {

void RowSpan::reduce(Reduction& r) const {
  while (!r.remainder.empty()) {
    const Index lead = r.remainder.max_index();
    auto it = pivot_of_.find(lead);
    if (it == pivot_of_.end()) return;
    const BasisRow& b = basis_[it->second];
    const Rational t = r.remainder.get(lead) / b.vector.get(lead);
    r.remainder.axpy(-t, b.vector);
    r.coeffs.axpy(t, b.combination);
  }
}

bool RowSpan::contains(const SparseVector& target) const {
  Reduction r = start(target);
  reduce(r);
  return r.complete();
}

bool RowSpan::add_row(Index row_id, const SparseVector& row) {
  Reduction r = start(row);
  reduce(r);
  if (r.complete()) return false;
  // remainder = row - sum(coeffs * rows)
  SparseVector combination = SparseVector::unit(row_id);
  combination.axpy(Rational(-1), r.coeffs);
  const Index pivot = r.remainder.max_index();
  pivot_of_.emplace(pivot, basis_.size());
  basis_.push_back(BasisRow{std::move(r.remainder), std::move(combination)});
  return true;
}

std::vector<Index> RowSpan::pivots() const {
  std::vector<Index> out;
  out.reserve(pivot_of_.size());
  for (const auto& [column, slot] : pivot_of_) out.push_back(column);
  return out;
}

std::vector<Index> RowSpan::free_columns(std::size_t n_cols) const {
  std::vector<Index> out;
  for (Index f = 1; f <= n_cols; ++f) {
    if (!is_pivot(f)) out.push_back(f);
  }
  return out;
}

std::vector<SparseVector> RowSpan::kernel_basis(std::size_t n_cols) const {
  if (!pivot_of_.empty() && pivot_of_.rbegin()->first > n_cols) {
    throw std::invalid_argument("kernel_basis: column range does not cover the fed rows");
  }
  std::vector<SparseVector> out;
  for (Index f : free_columns(n_cols)) {
    SparseVector x = SparseVector::unit(f);
    // Each basis vector only mentions columns up to its pivot, so solving in
    // ascending pivot order sees every other coordinate already fixed.
    for (const auto& [pivot, slot] : pivot_of_) {
      const SparseVector& b = basis_[slot].vector;
      Rational acc;
      for (const auto& [c, value] : b) {
        if (c == pivot) continue;
        acc += value * x.get(c);
      }
      x.set(pivot, -acc / b.get(pivot));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace tightload
