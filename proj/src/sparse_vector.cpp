#include "tightload/sparse_vector.hpp"

#include <sstream>

namespace tightload {

SparseVector::SparseVector(std::initializer_list<std::pair<const Index, Rational>> entries) {
  for (const auto& [j, value] : entries) set(j, value);
}

SparseVector SparseVector::unit(Index j) {
  if (j == 0) throw std::invalid_argument("indices are 1-based");
  SparseVector e;
  e.entries_.emplace(j, Rational(1));
  return e;
}

Rational SparseVector::get(Index j) const {
  auto it = entries_.find(j);
  return it == entries_.end() ? Rational{} : it->second;
}

void SparseVector::set(Index j, const Rational& value) {
  if (j == 0) throw std::invalid_argument("indices are 1-based");
  if (value.is_zero()) {
    entries_.erase(j);
  } else {
    entries_.insert_or_assign(j, value);
  }
}

std::vector<Index> SparseVector::support() const {
  std::vector<Index> out;
  out.reserve(entries_.size());
  for (const auto& [j, value] : entries_) out.push_back(j);
  return out;
}

void SparseVector::axpy(const Rational& c, const SparseVector& v) {
  if (c.is_zero()) return;
  for (const auto& [j, value] : v.entries_) {
    auto it = entries_.find(j);
    if (it == entries_.end()) {
      entries_.emplace(j, c * value);
      continue;
    }
    it->second += c * value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

SparseVector SparseVector::scaled(const Rational& c) const {
  SparseVector out;
  if (c.is_zero()) return out;
  for (const auto& [j, value] : entries_) out.entries_.emplace_hint(out.entries_.end(), j, value * c);
  return out;
}

std::string SparseVector::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [j, value] : entries_) {
    if (!first) os << ", ";
    first = false;
    os << j << ':' << value;
  }
  os << '}';
  return os.str();
}

SparseVector add_scaled(const SparseVector& u, const Rational& c, const SparseVector& v) {
  SparseVector out = u;
  out.axpy(c, v);
  return out;
}

SparseVector unit_vector(Index j) { return SparseVector::unit(j); }

UnderSpecifiedAssignment::UnderSpecifiedAssignment(Index j)
    : std::runtime_error("assignment has no value for x_" + std::to_string(j)), index_(j) {}

Assignment Assignment::dense(std::vector<Rational> values) { return Assignment(std::move(values)); }
Assignment Assignment::sparse(std::map<Index, Rational> values) { return Assignment(std::move(values)); }
Assignment Assignment::constant(Rational value) { return Assignment(std::move(value)); }

std::optional<Rational> Assignment::at(Index j) const {
  if (const auto* dense = std::get_if<std::vector<Rational>>(&data_)) {
    if (j == 0 || j > dense->size()) return std::nullopt;
    return (*dense)[j - 1];
  }
  if (const auto* table = std::get_if<std::map<Index, Rational>>(&data_)) {
    auto it = table->find(j);
    if (it == table->end()) return std::nullopt;
    return it->second;
  }
  return std::get<Rational>(data_);
}

Rational dot(const SparseVector& u, const Assignment& x) {
  Rational sum;
  for (const auto& [j, value] : u) {
    auto xj = x.at(j);
    if (!xj) throw UnderSpecifiedAssignment(j);
    sum += value * *xj;
  }
  return sum;
}

}  // namespace tightload
