#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/potential.hpp"
#include "halfbloch/spectrum.hpp"

namespace halfbloch {

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultObstructionTol = 1e-10;

/// Plane-wave Galerkin matrix of -Delta + q on the quasiperiodic space with
/// quasimomentum t, truncated to the lattice ball |gamma| <= cutoff.
///
/// Indices are kept in plane-major order (ascending oriented plane, ties
/// lexicographic). Entry (gamma, gamma') is |gamma+t|^2 [gamma = gamma'] +
/// q_{gamma - gamma'}, so a potential supported in the chosen open
/// half-lattice couples only strictly lower planes to higher ones and the
/// matrix is lower triangular with zero blocks on the plane diagonal.
class TruncatedOperator {
 public:
  /// `orientation` defaults to q's classification, or axis 1 with + when q
  /// is not classified (the triangularity check then fails).
  static TruncatedOperator build(const FourierPotential& q, const Eigen::VectorXd& t,
                                 double cutoff,
                                 std::optional<Orientation> orientation = std::nullopt);

  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<IndexVector>& indices() const noexcept { return indices_; }
  std::optional<std::size_t> position(const IndexVector& index) const;
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Orientation orientation() const noexcept { return orientation_; }
  const Eigen::VectorXd& t() const noexcept { return t_; }
  double cutoff() const noexcept { return cutoff_; }
  std::int64_t plane(std::size_t i) const { return orientation_.plane(indices_[i]); }
  const LatticeBasis& basis() const noexcept { return basis_; }
  const std::vector<IndexVector>& potential_support() const noexcept { return support_; }

  /// First nonzero off-diagonal entry with plane(row) <= plane(col), if any.
  std::optional<std::pair<std::size_t, std::size_t>> triangularity_violation() const;
  bool is_strictly_triangular() const { return !triangularity_violation(); }

  /// Principal submatrix on the kept indices (order preserved).
  TruncatedOperator restricted(const std::function<bool(const IndexVector&)>& keep) const;

  /// Spectral norm of the matrix (computed once).
  double norm() const;

 private:
  TruncatedOperator(LatticeBasis basis) : basis_(std::move(basis)) {}

  LatticeBasis basis_;
  Eigen::VectorXd t_;
  double cutoff_ = 0.0;
  Orientation orientation_;
  std::vector<IndexVector> indices_;
  std::map<IndexVector, std::size_t> lookup_;
  std::vector<IndexVector> support_;
  Eigen::MatrixXcd matrix_;
  mutable std::optional<double> norm_;
};

/// Eigenvalues of the truncated matrix: its diagonal, in index order.
/// Throws TriangularityError when the structure is lost, since the diagonal
/// is then no longer the spectrum.
std::vector<double> truncated_spectrum(const TruncatedOperator& op);

struct Backsolve {
  enum class Status { Eigenvector, Obstructed };
  Status status = Status::Eigenvector;
  /// x with x[leading] = 1 and zeros before `leading`; filled up to the
  /// obstruction row when obstructed.
  Eigen::VectorXcd vector;
  /// Later rows whose diagonal repeats lambda and whose right-hand side
  /// vanished; set to zero.
  std::vector<std::size_t> free_rows;
  std::optional<std::size_t> obstruction_row;
  /// Right-hand side that could not be matched at the obstruction row.
  std::complex<double> obstruction{};
};

/// Forward substitution for (M - lambda I) x = 0 with x[leading] = 1,
/// lambda = M(leading, leading).
Backsolve eigenvector_backsolve(const TruncatedOperator& op, std::size_t leading,
                                double group_tol = kDefaultGroupTol,
                                double obstruction_tol = kDefaultObstructionTol);

struct MultiplicityReport {
  int geometric = 0;
  /// Diagonal occurrences of lambda (algebraic multiplicity in the truncation).
  int algebraic = 0;
  double threshold = 0.0;
  /// Smallest singular values of M - lambda I, ascending (up to algebraic + 2).
  std::vector<double> smallest_singular_values;
  std::vector<std::string> warnings;
};

/// dim ker(M - lambda I) from the singular values, counting those at most
/// rank_tol * |M|. Singular values within a factor 10 of the threshold
/// produce a warning.
MultiplicityReport geometric_multiplicity(const TruncatedOperator& op, double lambda,
                                          double rank_tol = kDefaultRankTol,
                                          double group_tol = kDefaultGroupTol);

struct JordanProbe {
  /// ranks[k] = rank((M - lambda I)^(k+1)).
  std::vector<int> ranks;
  int geometric = 0;
  int algebraic = 0;
  /// Length of the longest Jordan chain (1 = eigenvectors only).
  int longest_chain = 0;
  bool has_chain() const noexcept { return longest_chain > 1; }
  std::vector<std::string> warnings;
};

/// Ranks of successive powers of M - lambda I until they stabilize. The rank
/// threshold for the k-th power is rank_tol times its spectral norm.
JordanProbe jordan_probe(const TruncatedOperator& op, double lambda,
                         double rank_tol = kDefaultRankTol, double group_tol = kDefaultGroupTol);

struct ChainSolve {
  Eigen::VectorXcd vector;
  /// |(M - lambda I) x - rhs| / |rhs|
  double relative_residual = 0.0;
};

/// Minimum-norm least-squares solution of (M - lambda I) x = rhs.
ChainSolve solve_chain(const TruncatedOperator& op, double lambda, const Eigen::VectorXcd& rhs);

/// Positions whose coefficient in the eigenvector led by `base` depends only
/// on indices inside the truncation: every predecessor gamma - w above the
/// plane of `base` is itself present and closed.
std::vector<std::size_t> closed_cone(const TruncatedOperator& op, const IndexVector& base);

/// Dense matrix dump, row-major, cells "re+imi" (e.g. "1.5-0.25i").
void write_matrix_csv(std::ostream& out, const TruncatedOperator& op);

}  // namespace halfbloch
