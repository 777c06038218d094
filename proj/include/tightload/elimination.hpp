#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tightload/sparse_vector.hpp"

namespace tightload {

// Incremental exact row echelon form over the rationals.
//
// Rows are fed in order with an identifier. Each stored basis vector keeps
// the combination of fed rows that produced it, so membership queries return
// coefficients over the original rows. The pivot of a basis vector is its
// LARGEST column index, which keeps streams whose rows introduce new trailing
// columns (the common shape of countable systems) reduction-free.
//
// Only rows that are independent of their predecessors ever enter the basis,
// so any combination returned is the unique representation over the greedy
// row basis taken in feed order.
class RowSpan {
 public:
  // Partially reduced target: remainder = target - sum(coeffs_i * row_i).
  struct Reduction {
    SparseVector remainder;
    SparseVector coeffs;
    bool complete() const { return remainder.empty(); }
  };

  // Returns true when the row enlarged the span.
  bool add_row(Index row_id, const SparseVector& row);

  Reduction start(const SparseVector& target) const { return Reduction{target, {}}; }
  // Continues reducing until the remainder vanishes or its leading column has
  // no pivot. Safe to call again after more rows were added.
  void reduce(Reduction& r) const;
  bool contains(const SparseVector& target) const;

  std::size_t rank() const { return basis_.size(); }
  bool is_pivot(Index column) const { return pivot_of_.count(column) != 0; }
  std::vector<Index> pivots() const;
  // Columns in 1..n_cols that carry no pivot, ascending.
  std::vector<Index> free_columns(std::size_t n_cols) const;

  // Basis of {x : row . x = 0 for every fed row} over columns 1..n_cols, one
  // vector per non-pivot column f with x_f = 1 and zero on the other free
  // columns. Columns must cover every fed row's support.
  std::vector<SparseVector> kernel_basis(std::size_t n_cols) const;

 private:
  struct BasisRow {
    SparseVector vector;
    SparseVector combination;
  };

  std::vector<BasisRow> basis_;
  std::map<Index, std::size_t> pivot_of_;  // pivot column -> basis slot
};

}  // namespace tightload
