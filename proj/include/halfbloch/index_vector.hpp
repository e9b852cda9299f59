#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace halfbloch {

/// Integer generator coordinates (n_1, ..., n_d) of the lattice vector
/// n_1 v_1 + ... + n_d v_d. Lattice membership questions are answered on
/// these integers, never on Cartesian coordinates.
class IndexVector {
 public:
  IndexVector() = default;
  explicit IndexVector(std::size_t dimension) : n_(dimension, 0) {}
  IndexVector(std::initializer_list<std::int64_t> n) : n_(n) {}
  explicit IndexVector(std::vector<std::int64_t> n) : n_(std::move(n)) {}

  std::size_t dimension() const noexcept { return n_.size(); }
  std::int64_t operator[](std::size_t i) const { return n_[i]; }
  std::int64_t& operator[](std::size_t i) { return n_[i]; }
  const std::vector<std::int64_t>& values() const noexcept { return n_; }
  bool is_zero() const noexcept;

  IndexVector& operator+=(const IndexVector& other);
  IndexVector& operator-=(const IndexVector& other);
  IndexVector& operator*=(std::int64_t factor);

  friend IndexVector operator+(IndexVector a, const IndexVector& b) { return a += b; }
  friend IndexVector operator-(IndexVector a, const IndexVector& b) { return a -= b; }
  friend IndexVector operator-(IndexVector a) { return a *= -1; }
  friend IndexVector operator*(std::int64_t f, IndexVector a) { return a *= f; }

  friend bool operator==(const IndexVector&, const IndexVector&) = default;
  friend std::strong_ordering operator<=>(const IndexVector& a, const IndexVector& b) {
    return a.n_ <=> b.n_;
  }

 private:
  std::vector<std::int64_t> n_;
};

/// Unit index vector e_axis.
IndexVector unit_index(std::size_t dimension, std::size_t axis);

/// "(3,-2)"
std::string to_string(const IndexVector& n);

/// Sparse complex coefficients keyed by lattice index, ordered
/// lexicographically.
using CoefficientMap = std::map<IndexVector, std::complex<double>>;

}  // namespace halfbloch
