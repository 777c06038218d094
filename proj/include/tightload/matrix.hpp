#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightload/sparse_vector.hpp"

namespace tightload {

// Finite I x J matrix whose rows are sparse vectors; row i is A_i (1-based).
class FiniteMatrix {
 public:
  FiniteMatrix() = default;
  // n_rows zero rows over n_cols columns.
  FiniteMatrix(std::size_t n_rows, std::size_t n_cols);
  // Throws std::invalid_argument if a row mentions a column beyond n_cols.
  FiniteMatrix(std::size_t n_cols, std::vector<SparseVector> rows);

  static FiniteMatrix identity(std::size_t n);
  // Row-major dense literal; all rows must have the same length.
  static FiniteMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return n_cols_; }

  const SparseVector& row(Index i) const;
  const std::vector<SparseVector>& rows() const { return rows_; }
  Rational entry(Index i, Index j) const { return row(i).get(j); }

  void set_row(Index i, SparseVector v);
  void set_entry(Index i, Index j, const Rational& value);
  void swap_rows(Index i, Index k);

  std::string to_string() const;

  friend bool operator==(const FiniteMatrix& a, const FiniteMatrix& b) {
    return a.n_cols_ == b.n_cols_ && a.rows_ == b.rows_;
  }

 private:
  void check_row(const SparseVector& v) const;

  std::size_t n_cols_ = 0;
  std::vector<SparseVector> rows_;
};

class RowUnavailable : public std::out_of_range {
 public:
  explicit RowUnavailable(Index i);
};

// Countable matrix given by a deterministic row generator. The column universe
// is whatever the rows mention. A finite row_count marks a stream that ends.
class LazyMatrix {
 public:
  using RowFunction = std::function<SparseVector(Index)>;

  LazyMatrix(std::string name, RowFunction rows, std::optional<Index> row_count = std::nullopt)
      : name_(std::move(name)), rows_(std::move(rows)), row_count_(row_count) {}

  static LazyMatrix from_finite(const FiniteMatrix& a, std::string name = "finite");

  const std::string& name() const { return name_; }
  std::optional<Index> row_count() const { return row_count_; }
  bool has_row(Index i) const { return i >= 1 && (!row_count_ || i <= *row_count_); }
  // Throws RowUnavailable past the end of a finite stream.
  SparseVector row(Index i) const;

  // First `rows` rows as a finite matrix; columns run to the largest index
  // mentioned (or n_cols when given and larger).
  FiniteMatrix prefix(std::size_t rows, std::size_t n_cols = 0) const;

 private:
  std::string name_;
  RowFunction rows_;
  std::optional<Index> row_count_;
};

// Single-consumer cursor over a LazyMatrix. A copy continues independently
// from the same position; a fresh RowStream replays from row 1.
class RowStream {
 public:
  explicit RowStream(LazyMatrix source) : source_(std::move(source)) {}

  std::optional<std::pair<Index, SparseVector>> next();
  std::size_t consumed() const { return consumed_; }
  bool ended() const { return !source_.has_row(consumed_ + 1); }

 private:
  LazyMatrix source_;
  std::size_t consumed_ = 0;
};

}  // namespace tightload
