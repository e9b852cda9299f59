#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"

namespace halfbloch {

/// Width of the equivalence class used when grouping equal free
/// eigenvalues (lambda units).
inline constexpr double kDefaultGroupTol = 1e-9;
/// Minimal gap | |gamma+t| - |gamma+b+t| | for simplicity (length units).
inline constexpr double kDefaultSimpleTol = 1e-6;

/// |gamma + t|^2, the free Bloch eigenvalue of the plane wave e^{i<gamma+t,x>}.
double eigenvalue(const LatticeBasis& basis, const IndexVector& gamma, const Eigen::VectorXd& t);

/// Smallest difference-ball radius accepted by is_simple/degeneracy_group:
/// 2 (|gamma+t| + sqrt(lambda)).
double required_cutoff(const LatticeBasis& basis, const IndexVector& gamma,
                       const Eigen::VectorXd& t);

/// True iff no b != 0 with |b| <= cutoff has | |gamma+t| - |gamma+b+t| | <= tol.
/// Throws CutoffError when cutoff < required_cutoff.
bool is_simple(const LatticeBasis& basis, const IndexVector& gamma, const Eigen::VectorXd& t,
               double cutoff, double tol = kDefaultSimpleTol);

struct GroupMember {
  IndexVector index;
  std::int64_t plane = 0;  // v_k-component p_j (not sign adjusted)
};

struct GroupPlane {
  std::int64_t plane = 0;
  std::vector<IndexVector> members;
};

/// Lattice vectors sharing one free eigenvalue, sorted so that the
/// oriented plane numbers decrease, with the planes they occupy.
struct EigenGroup {
  double lambda = 0.0;
  Orientation orientation;
  std::vector<GroupMember> members;
  /// Number of members on the leading (first) plane.
  std::size_t leading_count = 0;
  /// Planes in order first, second, ...
  std::vector<GroupPlane> planes;
  /// Distance in lambda to the nearest free level left out of the group;
  /// infinity when nothing else was enumerated.
  double gap = 0.0;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(const IndexVector& b) const;
  /// True iff b is one of the leading-plane members.
  bool is_leading(const IndexVector& b) const;
};

/// Collects every b = gamma + delta, |delta| <= cutoff, whose free eigenvalue
/// equals |gamma+t|^2 within group_tol, and orders it per `orientation`.
EigenGroup degeneracy_group(const LatticeBasis& basis, const IndexVector& gamma,
                            const Eigen::VectorXd& t, Orientation orientation, double cutoff,
                            double group_tol = kDefaultGroupTol);

}  // namespace halfbloch
