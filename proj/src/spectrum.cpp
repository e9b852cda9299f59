#include "halfbloch/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfbloch/errors.hpp"

namespace halfbloch {

double eigenvalue(const LatticeBasis& basis, const IndexVector& gamma, const Eigen::VectorXd& t) {
  return (basis.to_cartesian(gamma) + t).squaredNorm();
}

double required_cutoff(const LatticeBasis& basis, const IndexVector& gamma,
                       const Eigen::VectorXd& t) {
  const double r = (basis.to_cartesian(gamma) + t).norm();
  return 2.0 * (r + std::sqrt(eigenvalue(basis, gamma, t)));
}

namespace {

void check_cutoff(const LatticeBasis& basis, const IndexVector& gamma, const Eigen::VectorXd& t,
                  double cutoff) {
  const double need = required_cutoff(basis, gamma, t);
  if (cutoff < need) throw CutoffError(cutoff, need);
}

}  // namespace

bool is_simple(const LatticeBasis& basis, const IndexVector& gamma, const Eigen::VectorXd& t,
               double cutoff, double tol) {
  check_cutoff(basis, gamma, t, cutoff);
  const Eigen::VectorXd base = basis.to_cartesian(gamma) + t;
  const double r = base.norm();
  for (const auto& b : enumerate_ball(basis, Eigen::VectorXd::Zero(t.size()), cutoff)) {
    if (b.is_zero()) continue;
    if (std::abs(r - (base + basis.to_cartesian(b)).norm()) <= tol) return false;
  }
  return true;
}

bool EigenGroup::contains(const IndexVector& b) const {
  return std::any_of(members.begin(), members.end(),
                     [&](const GroupMember& m) { return m.index == b; });
}

bool EigenGroup::is_leading(const IndexVector& b) const {
  for (std::size_t i = 0; i < leading_count; ++i)
    if (members[i].index == b) return true;
  return false;
}

EigenGroup degeneracy_group(const LatticeBasis& basis, const IndexVector& gamma,
                            const Eigen::VectorXd& t, Orientation orientation, double cutoff,
                            double group_tol) {
  check_cutoff(basis, gamma, t, cutoff);
  EigenGroup group;
  group.lambda = eigenvalue(basis, gamma, t);
  group.orientation = orientation;
  group.gap = std::numeric_limits<double>::infinity();

  for (const auto& delta : enumerate_ball(basis, Eigen::VectorXd::Zero(t.size()), cutoff)) {
    const IndexVector b = gamma + delta;
    const double diff = std::abs(eigenvalue(basis, b, t) - group.lambda);
    if (diff <= group_tol)
      group.members.push_back({b, b[orientation.axis]});
    else
      group.gap = std::min(group.gap, diff);
  }

  std::sort(group.members.begin(), group.members.end(),
            [&](const GroupMember& x, const GroupMember& y) {
              const auto px = orientation.plane(x.index);
              const auto py = orientation.plane(y.index);
              if (px != py) return px > py;
              return x.index < y.index;
            });

  for (const auto& m : group.members) {
    if (group.planes.empty() || group.planes.back().plane != m.plane)
      group.planes.push_back({m.plane, {}});
    group.planes.back().members.push_back(m.index);
  }
  group.leading_count = group.planes.empty() ? 0 : group.planes.front().members.size();
  return group;
}

}  // namespace halfbloch
