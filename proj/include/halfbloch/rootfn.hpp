#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/bloch.hpp"
#include "halfbloch/exact.hpp"
#include "halfbloch/index_vector.hpp"
#include "halfbloch/potential.hpp"
#include "halfbloch/spectrum.hpp"

namespace halfbloch {

inline constexpr double kDefaultCriterionTol = 1e-10;

enum class RootClassification { Eigenfunction, AssociatedUpTo };

/// Root function led by a second-plane member b_{2,j} of a degenerate group.
struct RootFunctionReport {
  EigenGroup group;
  /// Plane number l (always 2 here) and member position j (0-based).
  int plane = 2;
  std::size_t member = 0;
  IndexVector target;
  /// Coefficients at absolute indices on the oriented planes strictly
  /// between the second and the leading plane, plus 1 at the target.
  CoefficientMap coefficients;
  /// One value per leading-plane member, in group order.
  std::vector<std::complex<double>> criterion_values;
  RootClassification classification = RootClassification::Eigenfunction;
  /// Upper bound on the associated order when not an eigenfunction.
  int bound = 0;
  double criterion_tol = kDefaultCriterionTol;
};

/// Solves the triangular system plane by plane between the second and the
/// leading plane for the member `member` of the second plane, and evaluates
/// the leading-plane criterion sums. Throws ResonanceError when a factor
/// lambda - |g+t|^2 vanishes off the group, i.e. the group missed a
/// collision.
RootFunctionReport second_plane_solve(const FourierPotential& q, const EigenGroup& group,
                                      std::size_t member, const Eigen::VectorXd& t,
                                      double criterion_tol = kDefaultCriterionTol,
                                      double denom_tol_rel = kDenomTolRel);

// One-dimensional problem on period-1 potentials: basis 2 pi, t = 0,
// q given as q_1, q_2, ... (q[m-1] = q_m).

/// sum_m q_m e^{i 2 pi m x} as a FourierPotential on the lattice 2 pi Z.
FourierPotential oned_potential(const std::vector<std::complex<double>>& q);

/// c_1 .. c_{2n-1} of the expansion led by -n:
/// c_p = (q_p + sum_{m<p} q_m c_{p-m}) / (4 pi^2 p (2n - p)).
std::vector<std::complex<double>> oned_coefficients(int n,
                                                    const std::vector<std::complex<double>>& q);

/// c_p for 1 <= p <= 2n-1.
std::complex<double> oned_coefficient(int n, const std::vector<std::complex<double>>& q, int p);

/// q_{2n} + sum_{p=1}^{2n-1} q_{2n-p} c_p. Zero iff (2 pi n)^2 is a double
/// eigenvalue in the geometric sense.
std::complex<double> oned_double_criterion(int n, const std::vector<std::complex<double>>& q);

/// Exact variants with q_m = rho_m pi^2, rho_m complex rational. The
/// coefficients c_p are then rational; the criterion is returned in units
/// of pi^2.
std::vector<ComplexRational> oned_coefficients_exact(int n, const std::vector<ComplexRational>& rho);
ComplexRational oned_double_criterion_exact(int n, const std::vector<ComplexRational>& rho);

enum class EigenfunctionForm { MinusForm, PlusForm, Zero };

/// Support pattern of a 1-D eigenfunction at (2 pi n)^2 (coefficients keyed
/// by frequency index). Throws ParseError on a malformed support.
EigenfunctionForm classify_eigenfunction_form(const std::map<std::int64_t, std::complex<double>>& psi,
                                              int n, double zero_tol = kDefaultCriterionTol);

const char* to_string(EigenfunctionForm form);

}  // namespace halfbloch
