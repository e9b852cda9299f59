#include "halfbloch/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "halfbloch/errors.hpp"

namespace halfbloch {

TruncatedOperator TruncatedOperator::build(const FourierPotential& q, const Eigen::VectorXd& t,
                                           double cutoff, std::optional<Orientation> orientation) {
  const LatticeBasis& basis = q.basis();
  const auto d = basis.dimension();
  if (static_cast<std::size_t>(t.size()) != d)
    throw std::invalid_argument("t must match the lattice dimension");
  if (!(cutoff >= 0.0)) throw std::invalid_argument("cutoff must be non-negative");

  TruncatedOperator op(basis);
  op.t_ = t;
  op.cutoff_ = cutoff;
  if (orientation)
    op.orientation_ = *orientation;
  else if (q.classification())
    op.orientation_ = *q.classification();

  op.indices_ = enumerate_ball(basis, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d)), cutoff);
  const Orientation o = op.orientation_;
  std::stable_sort(op.indices_.begin(), op.indices_.end(),
                   [&](const IndexVector& a, const IndexVector& b) {
                     const auto pa = o.plane(a);
                     const auto pb = o.plane(b);
                     if (pa != pb) return pa < pb;
                     return a < b;
                   });
  for (std::size_t i = 0; i < op.indices_.size(); ++i) op.lookup_.emplace(op.indices_[i], i);
  for (const auto& [w, qw] : q.coefficients()) op.support_.push_back(w);

  const auto n = static_cast<Eigen::Index>(op.indices_.size());
  op.matrix_ = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& gamma = op.indices_[static_cast<std::size_t>(i)];
    op.matrix_(i, i) = eigenvalue(basis, gamma, t);
    for (const auto& [w, qw] : q.coefficients()) {
      // Entry (gamma, gamma - w) carries q_w.
      if (auto j = op.position(gamma - w)) op.matrix_(i, static_cast<Eigen::Index>(*j)) += qw;
    }
  }
  return op;
}

std::optional<std::size_t> TruncatedOperator::position(const IndexVector& index) const {
  const auto it = lookup_.find(index);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::size_t, std::size_t>> TruncatedOperator::triangularity_violation()
    const {
  const auto n = static_cast<Eigen::Index>(size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || matrix_(i, j) == std::complex<double>{}) continue;
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (plane(ui) <= plane(uj)) return std::make_pair(ui, uj);
    }
  return std::nullopt;
}

TruncatedOperator TruncatedOperator::restricted(
    const std::function<bool(const IndexVector&)>& keep) const {
  TruncatedOperator out(basis_);
  out.t_ = t_;
  out.cutoff_ = cutoff_;
  out.orientation_ = orientation_;
  out.support_ = support_;
  std::vector<Eigen::Index> kept;
  for (std::size_t i = 0; i < indices_.size(); ++i)
    if (keep(indices_[i])) {
      out.lookup_.emplace(indices_[i], out.indices_.size());
      out.indices_.push_back(indices_[i]);
      kept.push_back(static_cast<Eigen::Index>(i));
    }
  const auto m = static_cast<Eigen::Index>(kept.size());
  out.matrix_.resize(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) out.matrix_(a, b) = matrix_(kept[a], kept[b]);
  return out;
}

double TruncatedOperator::norm() const {
  if (!norm_) {
    if (matrix_.size() == 0) {
      norm_ = 0.0;
    } else {
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix_);
      norm_ = svd.singularValues()(0);
    }
  }
  return *norm_;
}

std::vector<double> truncated_spectrum(const TruncatedOperator& op) {
  if (auto bad = op.triangularity_violation())
    throw TriangularityError(op.indices()[bad->first], op.indices()[bad->second]);
  std::vector<double> out;
  out.reserve(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    const auto entry = op.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    out.push_back(entry.real());
  }
  return out;
}

Backsolve eigenvector_backsolve(const TruncatedOperator& op, std::size_t leading,
                                double group_tol, double obstruction_tol) {
  if (leading >= op.size()) throw std::out_of_range("leading index outside the truncation");
  if (auto bad = op.triangularity_violation())
    throw TriangularityError(op.indices()[bad->first], op.indices()[bad->second]);

  const auto& M = op.matrix();
  const auto n = static_cast<Eigen::Index>(op.size());
  const auto lead = static_cast<Eigen::Index>(leading);
  const std::complex<double> lambda = M(lead, lead);

  Backsolve out;
  out.vector = Eigen::VectorXcd::Zero(n);
  out.vector(lead) = 1.0;
  for (Eigen::Index i = lead + 1; i < n; ++i) {
    std::complex<double> rhs{};
    for (Eigen::Index j = lead; j < i; ++j)
      if (out.vector(j) != std::complex<double>{}) rhs += M(i, j) * out.vector(j);
    const std::complex<double> diag = M(i, i) - lambda;
    if (std::abs(diag) > group_tol) {
      out.vector(i) = -rhs / diag;
      continue;
    }
    if (std::abs(rhs) <= obstruction_tol) {
      out.free_rows.push_back(static_cast<std::size_t>(i));
      continue;
    }
    out.status = Backsolve::Status::Obstructed;
    out.obstruction_row = static_cast<std::size_t>(i);
    out.obstruction = rhs;
    break;
  }
  return out;
}

namespace {

Eigen::MatrixXcd shifted(const TruncatedOperator& op, double lambda) {
  Eigen::MatrixXcd N = op.matrix();
  N.diagonal().array() -= lambda;
  return N;
}

int algebraic_count(const TruncatedOperator& op, double lambda, double group_tol) {
  int count = 0;
  for (Eigen::Index i = 0; i < op.matrix().rows(); ++i)
    if (std::abs(op.matrix()(i, i) - lambda) <= group_tol) ++count;
  return count;
}

std::string borderline_warning(double sigma, double threshold) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "singular value %.3e is within a factor 10 of the threshold %.3e",
                sigma, threshold);
  return buf;
}

struct RankResult {
  int rank = 0;
  std::vector<std::string> warnings;
};

RankResult numerical_rank(const Eigen::VectorXd& sigma, double threshold) {
  RankResult r;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++r.rank;
    if (sigma(i) > threshold / 10.0 && sigma(i) <= threshold * 10.0)
      r.warnings.push_back(borderline_warning(sigma(i), threshold));
  }
  return r;
}

}  // namespace

MultiplicityReport geometric_multiplicity(const TruncatedOperator& op, double lambda,
                                          double rank_tol, double group_tol) {
  MultiplicityReport report;
  report.algebraic = algebraic_count(op, lambda, group_tol);
  const auto n = static_cast<int>(op.size());
  if (n == 0) return report;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted(op, lambda));
  const Eigen::VectorXd& sigma = svd.singularValues();
  report.threshold = rank_tol * op.norm();
  auto ranked = numerical_rank(sigma, report.threshold);
  report.geometric = n - ranked.rank;
  report.warnings = std::move(ranked.warnings);

  const auto keep = std::min<Eigen::Index>(sigma.size(), report.algebraic + 2);
  for (Eigen::Index i = 0; i < keep; ++i)
    report.smallest_singular_values.push_back(sigma(sigma.size() - 1 - i));
  return report;
}

JordanProbe jordan_probe(const TruncatedOperator& op, double lambda, double rank_tol,
                         double group_tol) {
  JordanProbe probe;
  probe.algebraic = algebraic_count(op, lambda, group_tol);
  const auto n = static_cast<int>(op.size());
  if (n == 0) return probe;

  const Eigen::MatrixXcd N = shifted(op, lambda);
  Eigen::MatrixXcd power = N;
  int previous = n;
  // Ranks stabilize after at most algebraic + 1 powers.
  for (int k = 1; k <= probe.algebraic + 1; ++k) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(power);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double threshold = rank_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
    auto ranked = numerical_rank(sigma, threshold);
    probe.ranks.push_back(ranked.rank);
    for (auto& w : ranked.warnings)
      probe.warnings.push_back("power " + std::to_string(k) + ": " + std::move(w));
    if (ranked.rank == previous) break;
    previous = ranked.rank;
    power = power * N;
  }
  probe.geometric = n - probe.ranks.front();
  // Number of strictly decreasing steps is the longest chain length.
  int prev = n;
  for (int r : probe.ranks) {
    if (r < prev) ++probe.longest_chain;
    prev = r;
  }
  return probe;
}

ChainSolve solve_chain(const TruncatedOperator& op, double lambda, const Eigen::VectorXcd& rhs) {
  if (rhs.size() != static_cast<Eigen::Index>(op.size()))
    throw std::invalid_argument("right-hand side does not match the truncation");
  const Eigen::MatrixXcd N = shifted(op, lambda);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(N);
  cod.setThreshold(kDefaultRankTol);
  ChainSolve out;
  out.vector = cod.solve(rhs);
  const double scale = rhs.norm();
  out.relative_residual = scale > 0.0 ? (N * out.vector - rhs).norm() / scale : 0.0;
  return out;
}

std::vector<std::size_t> closed_cone(const TruncatedOperator& op, const IndexVector& base) {
  const auto start = op.position(base);
  if (!start) return {};
  const auto base_plane = op.orientation().plane(base);
  std::vector<bool> closed(op.size(), false);
  std::vector<std::size_t> out;
  for (std::size_t i = *start; i < op.size(); ++i) {
    if (op.plane(i) < base_plane) continue;
    if (op.indices()[i] == base) {
      closed[i] = true;
      out.push_back(i);
      continue;
    }
    if (op.plane(i) == base_plane) continue;
    bool ok = true;
    for (const auto& w : op.potential_support()) {
      const IndexVector pred = op.indices()[i] - w;
      // Predecessors at or below the base plane carry zero, except base itself.
      const auto pp = op.orientation().plane(pred);
      if (pp < base_plane || (pp == base_plane && pred != base)) continue;
      const auto j = op.position(pred);
      if (!j || !closed[*j]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      closed[i] = true;
      out.push_back(i);
    }
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const TruncatedOperator& op) {
  const auto& M = op.matrix();
  char buf[96];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", M(i, j).real(), M(i, j).imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace halfbloch
