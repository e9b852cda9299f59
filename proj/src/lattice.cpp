#include "halfbloch/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "halfbloch/errors.hpp"

namespace halfbloch {

namespace {

constexpr double kBallSlack = 1e-12;

Eigen::VectorXd project_out(const Eigen::MatrixXd& basis, std::size_t axis) {
  const auto d = basis.cols();
  const Eigen::VectorXd v = basis.col(static_cast<Eigen::Index>(axis));
  if (d == 1) return v;
  Eigen::MatrixXd others(basis.rows(), d - 1);
  for (Eigen::Index j = 0, c = 0; j < d; ++j) {
    if (j == static_cast<Eigen::Index>(axis)) continue;
    others.col(c++) = basis.col(j);
  }
  // Normal equations of the projection onto P(k).
  const Eigen::MatrixXd gram = others.transpose() * others;
  const Eigen::VectorXd coeff = gram.ldlt().solve(others.transpose() * v);
  return v - others * coeff;
}

}  // namespace

LatticeBasis::LatticeBasis(const std::vector<std::vector<double>>& generators) {
  const std::size_t d = generators.size();
  if (d == 0) throw std::invalid_argument("lattice basis needs at least one generator");
  matrix_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    if (generators[k].size() != d)
      throw std::invalid_argument("generator " + std::to_string(k + 1) + " has " +
                                  std::to_string(generators[k].size()) + " components, expected " +
                                  std::to_string(d));
    for (std::size_t i = 0; i < d; ++i) {
      if (!std::isfinite(generators[k][i]))
        throw std::invalid_argument("generator components must be finite");
      matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = generators[k][i];
    }
  }

  // Hadamard ratio det(G) / prod G_kk lies in [0, 1] and is scale free.
  const Eigen::MatrixXd gram = matrix_.transpose() * matrix_;
  double diag_product = 1.0;
  for (Eigen::Index k = 0; k < gram.rows(); ++k) diag_product *= gram(k, k);
  const double ratio = diag_product > 0.0 ? gram.determinant() / diag_product : 0.0;
  if (!(ratio > kGramDegeneracyThreshold))
    throw DegenerateBasisError("generators are linearly dependent (Gram ratio " +
                               std::to_string(ratio) + ")");

  inverse_ = matrix_.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix_);
  const auto& sv = svd.singularValues();
  inverse_norm_ = 1.0 / sv(sv.size() - 1);

  orthogonal_.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    orthogonal_.push_back(project_out(matrix_, k));
    if (!(orthogonal_.back().norm() > 0.0))
      throw DegenerateBasisError("generator " + std::to_string(k + 1) +
                                 " lies in the span of the others");
  }

  // The diameter of the parallelepiped is attained between opposite corners.
  const std::size_t corners = std::size_t{1} << (d - 1);
  for (std::size_t mask = 0; mask < corners; ++mask) {
    Eigen::VectorXd diag = matrix_.col(0);
    for (std::size_t k = 1; k < d; ++k)
      diag += ((mask >> (k - 1)) & 1U ? -1.0 : 1.0) * matrix_.col(static_cast<Eigen::Index>(k));
    cell_diameter_ = std::max(cell_diameter_, diag.norm());
  }
}

LatticeBasis LatticeBasis::scaled_identity(std::size_t dimension, double scale) {
  std::vector<std::vector<double>> g(dimension, std::vector<double>(dimension, 0.0));
  for (std::size_t k = 0; k < dimension; ++k) g[k][k] = scale;
  return LatticeBasis(g);
}

Eigen::VectorXd LatticeBasis::to_cartesian(const IndexVector& n) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(matrix_.rows());
  for (std::size_t j = 0; j < n.dimension(); ++j) {
    if (n[j] != 0) x += static_cast<double>(n[j]) * matrix_.col(static_cast<Eigen::Index>(j));
  }
  return x;
}

Eigen::VectorXd LatticeBasis::coordinates(const Eigen::VectorXd& x) const { return inverse_ * x; }

PlaneDecomposition decompose(const IndexVector& delta, std::size_t axis) {
  PlaneDecomposition out{delta, delta[axis]};
  out.a[axis] = 0;
  return out;
}

bool in_halfspace(const IndexVector& delta, Orientation orientation) {
  return orientation.plane(delta) >= 1;
}

double separation_constant(const LatticeBasis& basis, std::size_t axis) {
  if (axis >= basis.dimension()) throw std::out_of_range("axis out of range");
  return basis.orthogonal_component(axis).norm();
}

std::vector<IndexVector> enumerate_ball(const LatticeBasis& basis, const Eigen::VectorXd& center,
                                        double radius) {
  if (radius < 0.0) throw std::invalid_argument("enumerate_ball: negative radius");
  const std::size_t d = basis.dimension();
  const Eigen::VectorXd c = basis.coordinates(center);
  const double reach = basis.inverse_norm() * radius * (1.0 + kBallSlack) + 1e-9;

  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = static_cast<std::int64_t>(std::ceil(c(static_cast<Eigen::Index>(i)) - reach));
    hi[i] = static_cast<std::int64_t>(std::floor(c(static_cast<Eigen::Index>(i)) + reach));
    if (lo[i] > hi[i]) return {};
  }

  const double r2 = radius * radius * (1.0 + kBallSlack);
  std::vector<IndexVector> out;
  IndexVector n(lo);
  // Odometer with the first coordinate most significant gives lexicographic order.
  while (true) {
    if ((basis.to_cartesian(n) - center).squaredNorm() <= r2) out.push_back(n);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (n[i] < hi[i]) {
        ++n[i];
        for (std::size_t j = i + 1; j < d; ++j) n[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

Eigen::VectorXd reduce_quasimomentum(const LatticeBasis& basis, const Eigen::VectorXd& t) {
  Eigen::VectorXd c = basis.coordinates(t);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) -= std::floor(c(i) + 0.5);
    if (c(i) >= 0.5) c(i) -= 1.0;  // guard against rounding at the upper edge
  }
  return basis.matrix() * c;
}

}  // namespace halfbloch
