#include "tightload/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace tightload {

FiniteMatrix::FiniteMatrix(std::size_t n_rows, std::size_t n_cols) : n_cols_(n_cols), rows_(n_rows) {}

FiniteMatrix::FiniteMatrix(std::size_t n_cols, std::vector<SparseVector> rows)
    : n_cols_(n_cols), rows_(std::move(rows)) {
  for (const auto& r : rows_) check_row(r);
}

FiniteMatrix FiniteMatrix::identity(std::size_t n) {
  FiniteMatrix a(n, n);
  for (Index i = 1; i <= n; ++i) a.rows_[i - 1] = SparseVector::unit(i);
  return a;
}

FiniteMatrix FiniteMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  const std::size_t cols = dense.empty() ? 0 : dense.front().size();
  FiniteMatrix a(dense.size(), cols);
  for (Index i = 1; i <= dense.size(); ++i) {
    const auto& row = dense[i - 1];
    if (row.size() != cols) throw std::invalid_argument("ragged dense matrix literal");
    for (Index j = 1; j <= cols; ++j) a.rows_[i - 1].set(j, row[j - 1]);
  }
  return a;
}

const SparseVector& FiniteMatrix::row(Index i) const {
  if (i == 0 || i > rows_.size()) throw RowUnavailable(i);
  return rows_[i - 1];
}

void FiniteMatrix::set_row(Index i, SparseVector v) {
  if (i == 0 || i > rows_.size()) throw RowUnavailable(i);
  check_row(v);
  rows_[i - 1] = std::move(v);
}

void FiniteMatrix::set_entry(Index i, Index j, const Rational& value) {
  if (i == 0 || i > rows_.size()) throw RowUnavailable(i);
  if (j == 0 || j > n_cols_) throw std::out_of_range("column " + std::to_string(j) + " out of range");
  rows_[i - 1].set(j, value);
}

void FiniteMatrix::swap_rows(Index i, Index k) {
  if (i == 0 || i > rows_.size()) throw RowUnavailable(i);
  if (k == 0 || k > rows_.size()) throw RowUnavailable(k);
  std::swap(rows_[i - 1], rows_[k - 1]);
}

std::string FiniteMatrix::to_string() const {
  std::ostringstream os;
  for (Index i = 1; i <= rows_.size(); ++i) {
    os << '[';
    for (Index j = 1; j <= n_cols_; ++j) {
      if (j > 1) os << ' ';
      os << rows_[i - 1].get(j);
    }
    os << "]\n";
  }
  return os.str();
}

void FiniteMatrix::check_row(const SparseVector& v) const {
  if (!v.empty() && v.max_index() > n_cols_) {
    throw std::invalid_argument("row mentions column " + std::to_string(v.max_index()) + " beyond n_cols=" +
                                std::to_string(n_cols_));
  }
}

RowUnavailable::RowUnavailable(Index i) : std::out_of_range("row " + std::to_string(i) + " is not available") {}

LazyMatrix LazyMatrix::from_finite(const FiniteMatrix& a, std::string name) {
  return LazyMatrix(
      std::move(name), [a](Index i) { return a.row(i); }, a.n_rows());
}

SparseVector LazyMatrix::row(Index i) const {
  if (!has_row(i)) throw RowUnavailable(i);
  return rows_(i);
}

FiniteMatrix LazyMatrix::prefix(std::size_t rows, std::size_t n_cols) const {
  if (row_count_) rows = std::min<std::size_t>(rows, *row_count_);
  std::vector<SparseVector> out;
  out.reserve(rows);
  std::size_t cols = n_cols;
  for (Index i = 1; i <= rows; ++i) {
    out.push_back(rows_(i));
    if (!out.back().empty()) cols = std::max(cols, out.back().max_index());
  }
  return FiniteMatrix(cols, std::move(out));
}

std::optional<std::pair<Index, SparseVector>> RowStream::next() {
  const Index i = consumed_ + 1;
  if (!source_.has_row(i)) return std::nullopt;
  consumed_ = i;
  return std::make_pair(i, source_.row(i));
}

}  // namespace tightload
