#include "halfbloch/index_vector.hpp"

#include <algorithm>
#include <cassert>

namespace halfbloch {

bool IndexVector::is_zero() const noexcept {
  return std::all_of(n_.begin(), n_.end(), [](std::int64_t v) { return v == 0; });
}

IndexVector& IndexVector::operator+=(const IndexVector& other) {
  assert(other.n_.size() == n_.size());
  for (std::size_t i = 0; i < n_.size(); ++i) n_[i] += other.n_[i];
  return *this;
}

IndexVector& IndexVector::operator-=(const IndexVector& other) {
  assert(other.n_.size() == n_.size());
  for (std::size_t i = 0; i < n_.size(); ++i) n_[i] -= other.n_[i];
  return *this;
}

IndexVector& IndexVector::operator*=(std::int64_t factor) {
  for (auto& v : n_) v *= factor;
  return *this;
}

IndexVector unit_index(std::size_t dimension, std::size_t axis) {
  IndexVector e(dimension);
  e[axis] = 1;
  return e;
}

std::string to_string(const IndexVector& n) {
  std::string out = "(";
  for (std::size_t i = 0; i < n.dimension(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(n[i]);
  }
  out += ')';
  return out;
}

}  // namespace halfbloch
