#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"

namespace halfbloch {

/// Relative Gram-determinant threshold below which a generator set is
/// rejected as degenerate.
inline constexpr double kGramDegeneracyThreshold = 1e-12;

enum class Sign : int { Plus = 1, Minus = -1 };

/// Half-lattice selector: axis k (0-based) and the sign of the admissible
/// v_k-component.
struct Orientation {
  std::size_t axis = 0;
  Sign sign = Sign::Plus;

  /// sign * n_k, the plane number measured along the orientation.
  std::int64_t plane(const IndexVector& n) const {
    return static_cast<std::int64_t>(sign) * n[axis];
  }
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Generators v_1..v_d of the reciprocal lattice together with the derived
/// quantities used throughout: the component h_k of v_k orthogonal to the
/// span of the other generators and its length c(k).
class LatticeBasis {
 public:
  /// `generators[k]` is v_{k+1}. Throws DegenerateBasisError when the
  /// generators are (numerically) linearly dependent and std::invalid_argument
  /// on shape errors.
  explicit LatticeBasis(const std::vector<std::vector<double>>& generators);

  static LatticeBasis scaled_identity(std::size_t dimension, double scale = 1.0);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }

  /// Columns are the generators.
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  Eigen::VectorXd generator(std::size_t axis) const { return matrix_.col(static_cast<Eigen::Index>(axis)); }

  /// h_k: component of v_k orthogonal to P(k).
  const Eigen::VectorXd& orthogonal_component(std::size_t axis) const { return orthogonal_[axis]; }

  /// Sum of n_j v_j.
  Eigen::VectorXd to_cartesian(const IndexVector& n) const;

  /// Generator coordinates of a Cartesian point (B^{-1} x).
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const;

  /// Spectral norm of B^{-1}.
  double inverse_norm() const noexcept { return inverse_norm_; }

  /// Diameter of the fundamental cell {sum s_j v_j : s_j in [-1/2, 1/2)}.
  double cell_diameter() const noexcept { return cell_diameter_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd inverse_;
  std::vector<Eigen::VectorXd> orthogonal_;
  double inverse_norm_ = 0.0;
  double cell_diameter_ = 0.0;
};

struct PlaneDecomposition {
  IndexVector a;      // component in the sublattice spanned by the other generators
  std::int64_t p = 0;  // coefficient of v_k
};

/// Splits delta = a + p e_k with a_k = 0.
PlaneDecomposition decompose(const IndexVector& delta, std::size_t axis);

/// True iff sign * p >= 1 for the p-component along `orientation.axis`.
bool in_halfspace(const IndexVector& delta, Orientation orientation);

/// c(k) = |h_k|. Positive for every valid basis.
double separation_constant(const LatticeBasis& basis, std::size_t axis);

/// All n with |to_cartesian(n) - center| <= radius, in lexicographic order.
/// Points within a relative 1e-12 of the sphere count as inside.
std::vector<IndexVector> enumerate_ball(const LatticeBasis& basis, const Eigen::VectorXd& center,
                                        double radius);

/// Representative of t modulo the lattice with generator coordinates in
/// [-1/2, 1/2).
Eigen::VectorXd reduce_quasimomentum(const LatticeBasis& basis, const Eigen::VectorXd& t);

}  // namespace halfbloch
