#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tightload/matrix.hpp"

namespace tightload {

// e_target = sum_i coeffs(i) * A_i. Coefficients are keyed by row index.
struct RowCombination {
  Index target = 0;
  SparseVector coeffs;

  friend bool operator==(const RowCombination&, const RowCombination&) = default;
};

// Nonzero x with A x = 0; x(index) != 0.
struct KernelWitness {
  SparseVector x;
  Index index = 0;

  friend bool operator==(const KernelWitness&, const KernelWitness&) = default;
};

// Z with Z A = identity; Z has one row per column of A and one column per row.
struct LeftInverse {
  FiniteMatrix z;
};

struct TightnessVerdict {
  // Empty exactly when the matrix is tight.
  std::optional<KernelWitness> witness;

  bool tight() const { return !witness.has_value(); }
};

// Throws std::invalid_argument when x.size() != n_cols.
std::vector<Rational> mat_vec(const FiniteMatrix& a, std::span<const Rational> x);
// Throws UnderSpecifiedAssignment when x misses a needed index.
std::vector<Rational> mat_vec(const FiniteMatrix& a, const Assignment& x);

std::vector<SparseVector> kernel_basis(const FiniteMatrix& a);
TightnessVerdict is_tight(const FiniteMatrix& a);
// Kernel vector scaled so that x(j) = 1, if column j is not stubborn.
std::optional<KernelWitness> non_stubborn_witness(const FiniteMatrix& a, Index j);

// Solves lambda . A = e_j, eliminating rows in ascending order.
std::optional<RowCombination> express_unit_vector(const FiniteMatrix& a, Index j);

struct StubbornFound {
  RowCombination combination;
  std::size_t rows_consumed = 0;
};

// Not a disproof unless stream_ended is set (finite stream fully read).
struct StubbornExhausted {
  std::size_t rows_consumed = 0;
  bool stream_ended = false;
};

using StubbornSearchResult = std::variant<StubbornFound, StubbornExhausted>;

// Expanding-window search: pull rows in stream order and stop at the first
// prefix whose span contains e_j. Throws std::invalid_argument if budget < 1.
StubbornSearchResult stubborn_search_lazy(const LazyMatrix& a, Index j, std::size_t budget);

std::optional<LeftInverse> left_inverse(const FiniteMatrix& a);
// Throws std::invalid_argument on incompatible shapes.
bool verify_left_inverse(const FiniteMatrix& a, const FiniteMatrix& z);

bool verify_row_combination(const FiniteMatrix& a, const RowCombination& c);
bool verify_row_combination(const LazyMatrix& a, const RowCombination& c);
bool verify_kernel_witness(const FiniteMatrix& a, const KernelWitness& w);

// A closed subsystem: rows and columns of one connected component of the
// row/column incidence graph. Every column mentioned by a block row lies in
// the block.
struct Block {
  std::vector<Index> rows;
  std::vector<Index> cols;

  friend bool operator==(const Block&, const Block&) = default;
};

// Blocks ordered by their smallest column (column-free blocks, i.e. zero rows,
// come last ordered by row).
std::vector<Block> decompose_closed_subsystems(const FiniteMatrix& a);
std::vector<Block> decompose_closed_subsystems(const LazyMatrix& a, std::size_t rows);
// The block's rows/columns relabelled 1..k in ascending order.
FiniteMatrix block_matrix(const FiniteMatrix& a, const Block& block);

}  // namespace tightload
