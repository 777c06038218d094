#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tightload/rational.hpp"

namespace tightload {

// Row and column indices are 1-based positive integers.
using Index = std::size_t;

// Finitely supported vector: an element of FS(J). Stored entries are never
// zero, so the key set is exactly the support.
class SparseVector {
 public:
  using Storage = std::map<Index, Rational>;
  using const_iterator = Storage::const_iterator;

  SparseVector() = default;
  // Zero values in the list are dropped.
  SparseVector(std::initializer_list<std::pair<const Index, Rational>> entries);

  static SparseVector unit(Index j);

  Rational get(Index j) const;
  // Writes value at j; assigning zero erases the entry.
  void set(Index j, const Rational& value);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::vector<Index> support() const;
  bool contains(Index j) const { return entries_.count(j) != 0; }
  // Smallest / largest index in the support. Precondition: !empty().
  Index min_index() const { return entries_.begin()->first; }
  Index max_index() const { return entries_.rbegin()->first; }

  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  // this += c * v
  void axpy(const Rational& c, const SparseVector& v);
  SparseVector scaled(const Rational& c) const;

  std::string to_string() const;

  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

 private:
  Storage entries_;
};

// u + c*v, canonically pruned.
SparseVector add_scaled(const SparseVector& u, const Rational& c, const SparseVector& v);
SparseVector unit_vector(Index j);

class UnderSpecifiedAssignment : public std::runtime_error {
 public:
  explicit UnderSpecifiedAssignment(Index j);
  Index index() const { return index_; }

 private:
  Index index_;
};

// Values for the variables x_j. Either an explicit finite table or a constant
// assignment covering every index (e.g. the all-ones vector).
class Assignment {
 public:
  // values[0] is x_1.
  static Assignment dense(std::vector<Rational> values);
  static Assignment sparse(std::map<Index, Rational> values);
  static Assignment constant(Rational value);

  std::optional<Rational> at(Index j) const;

 private:
  explicit Assignment(std::variant<std::vector<Rational>, std::map<Index, Rational>, Rational> data)
      : data_(std::move(data)) {}

  std::variant<std::vector<Rational>, std::map<Index, Rational>, Rational> data_;
};

// Sum over the support of u. Throws UnderSpecifiedAssignment if x lacks an index.
Rational dot(const SparseVector& u, const Assignment& x);

}  // namespace tightload
