#include "tightload/tightness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tightload/elimination.hpp"

namespace tightload {
namespace {

RowSpan span_of(const FiniteMatrix& a) {
  RowSpan span;
  for (Index i = 1; i <= a.n_rows(); ++i) span.add_row(i, a.row(i));
  return span;
}

template <typename RowSource>
bool combination_matches(const RowSource& rows, const RowCombination& c) {
  if (c.target == 0) return false;
  SparseVector sum;
  for (const auto& [i, lambda] : c.coeffs) sum.axpy(lambda, rows(i));
  return sum == SparseVector::unit(c.target);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<Rational> mat_vec(const FiniteMatrix& a, std::span<const Rational> x) {
  if (x.size() != a.n_cols()) {
    throw std::invalid_argument("mat_vec: vector has " + std::to_string(x.size()) + " entries, matrix has " +
                                std::to_string(a.n_cols()) + " columns");
  }
  return mat_vec(a, Assignment::dense(std::vector<Rational>(x.begin(), x.end())));
}

std::vector<Rational> mat_vec(const FiniteMatrix& a, const Assignment& x) {
  std::vector<Rational> out;
  out.reserve(a.n_rows());
  for (const auto& row : a.rows()) out.push_back(dot(row, x));
  return out;
}

std::vector<SparseVector> kernel_basis(const FiniteMatrix& a) { return span_of(a).kernel_basis(a.n_cols()); }

TightnessVerdict is_tight(const FiniteMatrix& a) {
  const RowSpan span = span_of(a);
  auto basis = span.kernel_basis(a.n_cols());
  if (basis.empty()) return {};
  // The first basis vector belongs to the smallest free column, where it is 1.
  return TightnessVerdict{KernelWitness{std::move(basis.front()), span.free_columns(a.n_cols()).front()}};
}

std::optional<KernelWitness> non_stubborn_witness(const FiniteMatrix& a, Index j) {
  for (auto& x : kernel_basis(a)) {
    if (x.contains(j)) return KernelWitness{x.scaled(Rational(1) / x.get(j)), j};
  }
  return std::nullopt;
}

std::optional<RowCombination> express_unit_vector(const FiniteMatrix& a, Index j) {
  if (j == 0 || j > a.n_cols()) throw std::out_of_range("express_unit_vector: column out of range");
  const RowSpan span = span_of(a);
  auto r = span.start(SparseVector::unit(j));
  span.reduce(r);
  if (!r.complete()) return std::nullopt;
  return RowCombination{j, std::move(r.coeffs)};
}

StubbornSearchResult stubborn_search_lazy(const LazyMatrix& a, Index j, std::size_t budget) {
  if (budget < 1) throw std::invalid_argument("stubborn_search_lazy: budget must be >= 1");
  if (j == 0) throw std::out_of_range("stubborn_search_lazy: columns are 1-based");
  RowSpan span;
  RowStream stream(a);
  auto query = span.start(SparseVector::unit(j));
  while (stream.consumed() < budget) {
    auto next = stream.next();
    if (!next) break;
    if (!span.add_row(next->first, next->second)) continue;
    span.reduce(query);
    if (query.complete()) {
      return StubbornFound{RowCombination{j, std::move(query.coeffs)}, stream.consumed()};
    }
  }
  return StubbornExhausted{stream.consumed(), stream.ended()};
}

std::optional<LeftInverse> left_inverse(const FiniteMatrix& a) {
  const RowSpan span = span_of(a);
  std::vector<SparseVector> z_rows;
  z_rows.reserve(a.n_cols());
  for (Index j = 1; j <= a.n_cols(); ++j) {
    auto r = span.start(SparseVector::unit(j));
    span.reduce(r);
    if (!r.complete()) return std::nullopt;
    z_rows.push_back(std::move(r.coeffs));
  }
  return LeftInverse{FiniteMatrix(a.n_rows(), std::move(z_rows))};
}

bool verify_left_inverse(const FiniteMatrix& a, const FiniteMatrix& z) {
  if (z.n_cols() != a.n_rows() || z.n_rows() != a.n_cols()) {
    throw std::invalid_argument("verify_left_inverse: Z must be n_cols x n_rows of A");
  }
  for (Index l = 1; l <= z.n_rows(); ++l) {
    SparseVector product;
    for (const auto& [i, value] : z.row(l)) product.axpy(value, a.row(i));
    if (product != SparseVector::unit(l)) return false;
  }
  return true;
}

bool verify_row_combination(const FiniteMatrix& a, const RowCombination& c) {
  if (c.target > a.n_cols()) return false;
  for (const auto& [i, lambda] : c.coeffs) {
    if (i > a.n_rows()) return false;
  }
  return combination_matches([&](Index i) -> const SparseVector& { return a.row(i); }, c);
}

bool verify_row_combination(const LazyMatrix& a, const RowCombination& c) {
  return combination_matches([&](Index i) { return a.row(i); }, c);
}

bool verify_kernel_witness(const FiniteMatrix& a, const KernelWitness& w) {
  if (w.x.empty() || !w.x.contains(w.index)) return false;
  if (w.x.max_index() > a.n_cols()) return false;
  const auto x = Assignment::sparse({w.x.begin(), w.x.end()});
  for (const auto& row : a.rows()) {
    Rational sum;
    for (const auto& [j, value] : row) {
      if (auto xj = x.at(j)) sum += value * *xj;
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

std::vector<Block> decompose_closed_subsystems(const FiniteMatrix& a) {
  const std::size_t n = a.n_rows();
  const std::size_t m = a.n_cols();
  // Vertices 0..n-1 are rows, n..n+m-1 are columns.
  DisjointSets sets(n + m);
  for (Index i = 1; i <= n; ++i) {
    for (const auto& [j, value] : a.row(i)) sets.unite(i - 1, n + j - 1);
  }
  std::map<std::size_t, Block> by_root;
  for (Index j = 1; j <= m; ++j) by_root[sets.find(n + j - 1)].cols.push_back(j);
  for (Index i = 1; i <= n; ++i) by_root[sets.find(i - 1)].rows.push_back(i);

  std::vector<Block> blocks;
  blocks.reserve(by_root.size());
  for (auto& [root, block] : by_root) blocks.push_back(std::move(block));
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
    if (x.cols.empty() != y.cols.empty()) return y.cols.empty();
    if (!x.cols.empty()) return x.cols.front() < y.cols.front();
    return x.rows.front() < y.rows.front();
  });
  return blocks;
}

std::vector<Block> decompose_closed_subsystems(const LazyMatrix& a, std::size_t rows) {
  return decompose_closed_subsystems(a.prefix(rows));
}

FiniteMatrix block_matrix(const FiniteMatrix& a, const Block& block) {
  std::map<Index, Index> column_label;
  for (Index k = 0; k < block.cols.size(); ++k) column_label.emplace(block.cols[k], k + 1);
  std::vector<SparseVector> rows;
  rows.reserve(block.rows.size());
  for (Index i : block.rows) {
    SparseVector r;
    for (const auto& [j, value] : a.row(i)) {
      auto it = column_label.find(j);
      if (it == column_label.end()) throw std::invalid_argument("block_matrix: block is not closed");
      r.set(it->second, value);
    }
    rows.push_back(std::move(r));
  }
  return FiniteMatrix(block.cols.size(), std::move(rows));
}

}  // namespace tightload
