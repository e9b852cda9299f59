#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"

namespace halfbloch {

enum class PotentialMode { Summable, SquareSummable };

/// Why a potential fails to lie in S(k+) or S(k-) for one axis.
struct AxisWitness {
  std::size_t axis = 0;
  /// One support index with zero k-component, or two with opposite signs.
  std::vector<IndexVector> indices;
};

/// Smallest axis (then +, then -) whose open half-lattice contains the
/// whole support. The empty support lies in every half-lattice.
std::optional<Orientation> classify(const CoefficientMap& coeffs, std::size_t dimension);

/// One witness per axis; empty when the support is classified.
std::vector<AxisWitness> classification_witnesses(const CoefficientMap& coeffs,
                                                  std::size_t dimension);

/// Finitely supported periodic potential q(x) = sum q_gamma e^{i<gamma,x>}.
class FourierPotential {
 public:
  /// Exact zeros are dropped. In square-summable mode (d = 2 or 3 only) a
  /// truncation radius is mandatory and coefficients with |gamma| above it
  /// are discarded.
  FourierPotential(LatticeBasis basis, CoefficientMap coeffs,
                   PotentialMode mode = PotentialMode::Summable,
                   std::optional<double> truncation_radius = std::nullopt);

  /// The zero potential.
  explicit FourierPotential(LatticeBasis basis);

  const LatticeBasis& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.dimension(); }
  const CoefficientMap& coefficients() const noexcept { return coeffs_; }
  std::complex<double> coefficient(const IndexVector& gamma) const;
  bool empty() const noexcept { return coeffs_.empty(); }

  std::optional<Orientation> classification() const noexcept { return classification_; }
  bool supported_in(Orientation orientation) const;

  double l1_norm() const noexcept { return l1_; }
  double l2_norm() const noexcept { return l2_; }
  PotentialMode mode() const noexcept { return mode_; }
  std::optional<double> truncation_radius() const noexcept { return truncation_radius_; }

  /// All coefficients real: the PT-symmetric subclass.
  bool is_pt_symmetric() const;

  std::complex<double> evaluate(const Eigen::VectorXd& x) const;

 private:
  LatticeBasis basis_;
  CoefficientMap coeffs_;
  PotentialMode mode_ = PotentialMode::Summable;
  std::optional<double> truncation_radius_;
  std::optional<Orientation> classification_;
  double l1_ = 0.0;
  double l2_ = 0.0;
};

/// Orientation to use for q: the requested one (validated against the
/// support) or q's own classification. Throws ClassificationError.
Orientation resolve_orientation(const FourierPotential& q, std::optional<Orientation> requested);

}  // namespace halfbloch
