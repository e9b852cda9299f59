#include "halfbloch/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "halfbloch/errors.hpp"
#include "halfbloch/spectrum.hpp"

namespace halfbloch {

std::complex<double> BlochCoefficients::at(const IndexVector& delta) const {
  const auto it = coefficients.find(delta);
  return it == coefficients.end() ? std::complex<double>{} : it->second;
}

namespace {

double l1_mass(const CoefficientMap& m) {
  double s = 0.0;
  for (const auto& [k, v] : m) s += std::abs(v);
  return s;
}

void check_dimensions(const FourierPotential& q, const IndexVector& gamma,
                      const Eigen::VectorXd& t) {
  const auto d = q.dimension();
  if (gamma.dimension() != d || static_cast<std::size_t>(t.size()) != d)
    throw std::invalid_argument("gamma and t must match the lattice dimension");
}

}  // namespace

CoefficientMap apply_A(const FourierPotential& q, const IndexVector& gamma,
                       const Eigen::VectorXd& t, const CoefficientMap& input,
                       double denom_tol_rel) {
  check_dimensions(q, gamma, t);
  const LatticeBasis& basis = q.basis();
  const double lambda = eigenvalue(basis, gamma, t);
  const double guard = denom_tol_rel * (1.0 + lambda);
  const Eigen::VectorXd base = basis.to_cartesian(gamma) + t;

  CoefficientMap out;
  for (const auto& [delta, value] : input) {
    for (const auto& [w, qw] : q.coefficients()) {
      IndexVector target = delta + w;
      const double denom = lambda - (base + basis.to_cartesian(target)).squaredNorm();
      if (std::abs(denom) < guard) throw ResonanceError(gamma + target, denom, "apply_A");
      out[std::move(target)] += qw * value / denom;
    }
  }
  return out;
}

BlochCoefficients bloch_series(const FourierPotential& q, const IndexVector& gamma,
                               const Eigen::VectorXd& t, const SeriesOptions& options) {
  check_dimensions(q, gamma, t);
  if (options.max_order < 0) throw std::invalid_argument("max_order must be non-negative");
  BlochCoefficients psi;
  psi.gamma = gamma;
  psi.t = t;
  psi.orientation = resolve_orientation(q, options.orientation);
  psi.lambda = eigenvalue(q.basis(), gamma, t);

  CoefficientMap term{{IndexVector(gamma.dimension()), {1.0, 0.0}}};
  psi.coefficients = term;
  psi.term_masses.push_back(1.0);
  psi.tail = 1.0;

  for (int n = 1; n <= options.max_order; ++n) {
    term = apply_A(q, gamma, t, term, options.denom_tol_rel);
    for (const auto& [delta, value] : term) psi.coefficients[delta] += value;
    psi.tail = l1_mass(term);
    psi.term_masses.push_back(psi.tail);
    psi.order = n;
    if (psi.tail < options.tail_tol) break;
  }
  psi.converged = psi.tail < options.tail_tol;
  return psi;
}

BlochCoefficients closed_form_coeffs(const FourierPotential& q, const IndexVector& gamma,
                                     const Eigen::VectorXd& t, int depth,
                                     std::optional<Orientation> orientation,
                                     double denom_tol_rel) {
  check_dimensions(q, gamma, t);
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  const LatticeBasis& basis = q.basis();
  BlochCoefficients psi;
  psi.gamma = gamma;
  psi.t = t;
  psi.orientation = resolve_orientation(q, orientation);
  psi.lambda = eigenvalue(basis, gamma, t);
  psi.order = depth;
  const Orientation o = psi.orientation;
  const double guard = denom_tol_rel * (1.0 + psi.lambda);
  const Eigen::VectorXd base = basis.to_cartesian(gamma) + t;

  // planes[p] holds c(gamma, delta) for delta on oriented plane p.
  std::vector<CoefficientMap> planes(static_cast<std::size_t>(depth) + 1);
  for (int p = 1; p <= depth; ++p) {
    CoefficientMap numerators;
    for (const auto& [w, qw] : q.coefficients()) {
      const auto pw = o.plane(w);
      if (pw == p) numerators[w] += qw;
      if (pw >= p) continue;
      for (const auto& [prev, c] : planes[static_cast<std::size_t>(p - pw)])
        numerators[prev + w] += qw * c;
    }
    for (auto& [delta, num] : numerators) {
      const double d = psi.lambda - (base + basis.to_cartesian(delta)).squaredNorm();
      if (std::abs(d) < guard) throw ResonanceError(gamma + delta, d, "closed_form_coeffs");
      planes[static_cast<std::size_t>(p)].emplace(delta, num / d);
    }
  }

  psi.coefficients.emplace(IndexVector(gamma.dimension()), std::complex<double>(1.0, 0.0));
  for (const auto& plane : planes) psi.coefficients.insert(plane.begin(), plane.end());
  return psi;
}

double residual(const FourierPotential& q, const BlochCoefficients& psi) {
  const LatticeBasis& basis = q.basis();
  const Eigen::VectorXd base = basis.to_cartesian(psi.gamma) + psi.t;
  CoefficientMap image;
  for (const auto& [delta, c] : psi.coefficients) {
    const double kinetic = (base + basis.to_cartesian(delta)).squaredNorm() - psi.lambda;
    image[delta] += kinetic * c;
    for (const auto& [w, qw] : q.coefficients()) image[delta + w] += qw * c;
  }
  double sum = 0.0;
  for (const auto& [k, v] : image) sum += std::norm(v);
  return std::sqrt(sum);
}

double max_discrepancy(const BlochCoefficients& a, const BlochCoefficients& b, int max_plane) {
  std::set<IndexVector> keys;
  for (const auto& [k, v] : a.coefficients)
    if (a.orientation.plane(k) <= max_plane) keys.insert(k);
  for (const auto& [k, v] : b.coefficients)
    if (a.orientation.plane(k) <= max_plane) keys.insert(k);
  double worst = 0.0;
  for (const auto& k : keys) worst = std::max(worst, std::abs(a.at(k) - b.at(k)));
  return worst;
}

}  // namespace halfbloch
