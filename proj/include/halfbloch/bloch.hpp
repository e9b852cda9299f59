#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/potential.hpp"

namespace halfbloch {

/// Relative guard for vanishing denominators: |d| < kDenomTolRel (1 + lambda).
inline constexpr double kDenomTolRel = 1e-12;

/// Fourier coefficients c(gamma, delta) of a Bloch function
/// Psi = sum_delta c(gamma, delta) e^{i<gamma+delta+t, x>}, normalized by
/// c(gamma, 0) = 1. Keys are the offsets delta.
struct BlochCoefficients {
  IndexVector gamma;
  Eigen::VectorXd t;
  Orientation orientation;
  double lambda = 0.0;
  CoefficientMap coefficients;
  /// Series order reached, or plane depth for the closed form.
  int order = 0;
  /// l1 mass of the last series term added (0 for the closed form).
  double tail = 0.0;
  bool converged = true;
  /// l1 mass of every series term, term 0 first.
  std::vector<double> term_masses;

  std::complex<double> at(const IndexVector& delta) const;
};

struct SeriesOptions {
  int max_order = 12;
  double tail_tol = 1e-14;
  double denom_tol_rel = kDenomTolRel;
  std::optional<Orientation> orientation;
};

/// One application of the operator A(gamma): every entry c at offset delta
/// sends q_w c / (lambda - |gamma + delta + w + t|^2) to offset delta + w.
/// Throws ResonanceError (carrying the absolute index) on a vanishing
/// denominator.
CoefficientMap apply_A(const FourierPotential& q, const IndexVector& gamma,
                       const Eigen::VectorXd& t, const CoefficientMap& input,
                       double denom_tol_rel = kDenomTolRel);

/// Partial sums of sum_n A(gamma)^n e_gamma. Stops once the l1 mass of the
/// newest term drops below tail_tol or max_order terms were added; sets
/// converged = false in the latter case if the tail is still too large.
BlochCoefficients bloch_series(const FourierPotential& q, const IndexVector& gamma,
                               const Eigen::VectorXd& t, const SeriesOptions& options = {});

/// Plane-by-plane recursion for the coefficients on planes 1..depth:
/// c(delta) = (q_delta + sum_w q_w c(delta - w)) / d(gamma, delta), where
/// d(gamma, delta) = |gamma+t|^2 - |gamma+delta+t|^2 and the sum runs over
/// support vectors w with delta - w in the open half-lattice.
BlochCoefficients closed_form_coeffs(const FourierPotential& q, const IndexVector& gamma,
                                     const Eigen::VectorXd& t, int depth,
                                     std::optional<Orientation> orientation = std::nullopt,
                                     double denom_tol_rel = kDenomTolRel);

/// l2 norm of the Fourier coefficients of (-Delta + q - lambda) Psi over
/// supp(Psi) + ({0} u supp(q)).
double residual(const FourierPotential& q, const BlochCoefficients& psi);

/// Largest |a(delta) - b(delta)| over offsets whose oriented plane is at
/// most max_plane (entries missing on one side count as zero).
double max_discrepancy(const BlochCoefficients& a, const BlochCoefficients& b, int max_plane);

}  // namespace halfbloch
