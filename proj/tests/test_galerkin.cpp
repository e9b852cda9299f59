#include "halfbloch/galerkin.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "halfbloch/bloch.hpp"
#include "halfbloch/errors.hpp"
#include "halfbloch/rootfn.hpp"
#include "support.hpp"

using namespace halfbloch;
using support::vec;

namespace {

SeriesOptions series_opts(int order, double tail_tol) {
  SeriesOptions o;
  o.max_order = order;
  o.tail_tol = tail_tol;
  return o;
}

}  // namespace

namespace {

const LatticeBasis kId = LatticeBasis::scaled_identity(2);
const double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Index at(const TruncatedOperator& op, const IndexVector& g) {
  return static_cast<Eigen::Index>(*op.position(g));
}

}  // namespace

TEST(Build, FreeOperatorIsDiagonal) {
  const auto op = TruncatedOperator::build(FourierPotential(kId), vec({0.5, 0.3}), 1.5);
  ASSERT_EQ(op.size(), 9U);
  const Eigen::MatrixXcd& M = op.matrix();
  EXPECT_TRUE(M.isApprox(Eigen::MatrixXcd(M.diagonal().asDiagonal())));
  for (std::size_t i = 0; i < op.size(); ++i)
    EXPECT_EQ(M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(),
              eigenvalue(kId, op.indices()[i], vec({0.5, 0.3})));
  EXPECT_NEAR(M(at(op, {0, 0}), at(op, {0, 0})).real(), 0.34, 1e-15);
  EXPECT_NEAR(M(at(op, {1, 0}), at(op, {1, 0})).real(), 2.34, 1e-15);
}

TEST(Build, PlaneMajorOrder) {
  const auto op = TruncatedOperator::build(FourierPotential(kId), vec({0, 0}), 1.5, Orientation{1, Sign::Minus});
  for (std::size_t i = 1; i < op.size(); ++i) {
    EXPECT_LE(op.plane(i - 1), op.plane(i));
    if (op.plane(i - 1) == op.plane(i)) {
      EXPECT_LT(op.indices()[i - 1], op.indices()[i]);
    }
  }
  EXPECT_EQ(op.indices().front()[1], 1);  // highest v_2 component = lowest oriented plane
}

TEST(Build, HarmonicFillsShiftedPairs) {
  const std::complex<double> A{0.3, -0.1};
  const FourierPotential q(kId, {{{1, 0}, A}});
  const auto op = TruncatedOperator::build(q, vec({0.5, 0.3}), 2.5);
  int filled = 0;
  for (std::size_t j = 0; j < op.size(); ++j) {
    const IndexVector target = op.indices()[j] + IndexVector{1, 0};
    if (const auto i = op.position(target)) {
      EXPECT_EQ(op.matrix()(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)), A);
      ++filled;
    }
  }
  EXPECT_GT(filled, 10);
  EXPECT_TRUE(op.is_strictly_triangular());
}

TEST(TruncatedSpectrum, EqualsFreeSpectrumForClassifiedPotentials) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const Orientation o{static_cast<std::size_t>(support::uniform_int(rng, 0, 1)),
                        support::uniform_int(rng, 0, 1) ? Sign::Plus : Sign::Minus};
    const FourierPotential q(kId, support::random_half_potential(rng, 2, o, 8, 4, 4, 1.0));
    const Eigen::VectorXd t = vec({support::random_rational(rng, 8), support::random_rational(rng, 6)});
    const auto op = TruncatedOperator::build(q, t, 5.0);
    const auto free = TruncatedOperator::build(FourierPotential(kId), t, 5.0, o);
    EXPECT_TRUE(op.is_strictly_triangular());
    // The classification may pick another orientation, so compare as multisets.
    auto a = truncated_spectrum(op);
    auto b = truncated_spectrum(free);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(TruncatedSpectrum, UnclassifiedPotentialIsRejected) {
  const FourierPotential q(kId, {{{1, 0}, 0.2}, {{-1, 0}, 0.2}});
  const auto op = TruncatedOperator::build(q, vec({0.1, 0.2}), 3.0);
  EXPECT_FALSE(op.is_strictly_triangular());
  EXPECT_THROW(truncated_spectrum(op), TriangularityError);
}

TEST(TruncatedSpectrum, WrongOrientationIsRejected) {
  const FourierPotential q(kId, {{{1, 0}, 0.2}});
  const auto op = TruncatedOperator::build(q, vec({0.1, 0.2}), 3.0, Orientation{0, Sign::Minus});
  EXPECT_THROW(truncated_spectrum(op), TriangularityError);
}

TEST(Backsolve, FreeOperatorGivesUnitVector) {
  const auto op = TruncatedOperator::build(FourierPotential(kId), vec({0.1, 0.2}), 3.0);
  const auto r = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {0, 0})));
  EXPECT_EQ(r.status, Backsolve::Status::Eigenvector);
  EXPECT_EQ(r.vector.norm(), 1.0);
  EXPECT_EQ(r.vector(at(op, {0, 0})), std::complex<double>(1.0));
}

TEST(Backsolve, MatchesClosedFormOnClosedCone) {
  const FourierPotential q(kId, {{{1, 0}, 0.1}});
  const Eigen::VectorXd t = vec({0.5, 0.3});
  const auto op = TruncatedOperator::build(q, t, 6.0);
  const auto r = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {0, 0})));
  ASSERT_EQ(r.status, Backsolve::Status::Eigenvector);
  const auto series = bloch_series(q, {0, 0}, t, series_opts(20, 0.0));
  const auto cone = closed_cone(op, {0, 0});
  EXPECT_GE(cone.size(), 6U);
  for (std::size_t i : cone)
    EXPECT_NEAR(std::abs(r.vector(static_cast<Eigen::Index>(i)) - series.at(op.indices()[i])), 0.0, 1e-10);
}

TEST(Backsolve, AgreesWithClosedFormOnRandomInstances) {
  std::mt19937_64 rng(52);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Orientation o{0, Sign::Plus};
    const FourierPotential q(kId, support::random_half_potential(rng, 2, o, 5, 2, 2, 0.4));
    const Eigen::VectorXd t = vec({support::random_rational(rng, 10), support::random_rational(rng, 7)});
    const IndexVector gamma{support::uniform_int(rng, -2, 0), support::uniform_int(rng, -1, 1)};
    const auto op = TruncatedOperator::build(q, t, 5.0);
    const auto pos = op.position(gamma);
    ASSERT_TRUE(pos);
    const auto r = eigenvector_backsolve(op, *pos);
    if (r.status != Backsolve::Status::Eigenvector) continue;
    std::int64_t top = 0;
    for (std::size_t i = 0; i < op.size(); ++i) top = std::max(top, op.plane(i));
    BlochCoefficients closed;
    try {
      closed = closed_form_coeffs(q, gamma, t, static_cast<int>(top - o.plane(gamma)));
    } catch (const ResonanceError&) {
      continue;
    }
    for (std::size_t i : closed_cone(op, gamma))
      EXPECT_NEAR(std::abs(r.vector(static_cast<Eigen::Index>(i)) - closed.at(op.indices()[i] - gamma)),
                  0.0, 1e-10);
    ++compared;
  }
  EXPECT_GT(compared, 20);
}

TEST(Backsolve, ObstructionAtRepeatedDiagonal) {
  // 1-D, q_1 = a only: (2 pi)^2 is hit at -1 and +1; the chain from -1
  // reaches +1 with right-hand side a^2 / (4 pi^2) != 0.
  const double a = 0.8;
  const auto q = oned_potential({a});
  const auto op = TruncatedOperator::build(q, vec({0}), kTwoPi * 3);
  const auto minus = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {-1})));
  EXPECT_EQ(minus.status, Backsolve::Status::Obstructed);
  ASSERT_TRUE(minus.obstruction_row);
  EXPECT_EQ(op.indices()[*minus.obstruction_row], (IndexVector{1}));
  EXPECT_NEAR(std::abs(minus.obstruction - a * a / (kTwoPi * kTwoPi)), 0.0, 1e-14);
  const auto plus = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {1})));
  EXPECT_EQ(plus.status, Backsolve::Status::Eigenvector);
}

TEST(Backsolve, TunedPotentialGivesTwoSolutions) {
  const double a = 0.8;
  const auto q = oned_potential({a, -a * a / (kTwoPi * kTwoPi)});
  const auto op = TruncatedOperator::build(q, vec({0}), kTwoPi * 3);
  const auto minus = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {-1})));
  const auto plus = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {1})));
  ASSERT_EQ(minus.status, Backsolve::Status::Eigenvector);
  ASSERT_EQ(plus.status, Backsolve::Status::Eigenvector);
  Eigen::MatrixXcd both(op.size(), 2);
  both << minus.vector, plus.vector;
  EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(both).rank(), 2);
  const double lambda = kTwoPi * kTwoPi;
  Eigen::MatrixXcd N = op.matrix();
  N.diagonal().array() -= lambda;
  EXPECT_LT((N * minus.vector).norm(), 1e-12);
  EXPECT_LT((N * plus.vector).norm(), 1e-12);
}

TEST(GeometricMultiplicity, Examples) {
  const auto free = TruncatedOperator::build(FourierPotential(kId), vec({0, 0}), 2.0);
  EXPECT_EQ(geometric_multiplicity(free, 1.0).geometric, 4);
  EXPECT_EQ(geometric_multiplicity(free, 1.0).algebraic, 4);

  const double a = 0.8;
  const double lambda = kTwoPi * kTwoPi;
  const auto tuned = TruncatedOperator::build(oned_potential({a, -a * a / lambda}), vec({0}), kTwoPi * 3);
  const auto m2 = geometric_multiplicity(tuned, lambda);
  EXPECT_EQ(m2.geometric, 2);
  EXPECT_TRUE(m2.warnings.empty());
  const auto plain = TruncatedOperator::build(oned_potential({a}), vec({0}), kTwoPi * 3);
  const auto m1 = geometric_multiplicity(plain, lambda);
  EXPECT_EQ(m1.geometric, 1);
  EXPECT_EQ(m1.algebraic, 2);
}

TEST(GeometricMultiplicity, StableUnderLargerCutoff) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::complex<double>> coeffs;
    for (int m = 0; m < 4; ++m) coeffs.push_back(support::random_complex(rng, 1.0));
    const auto q = oned_potential(coeffs);
    for (int n : {1, 2}) {
      const double lambda = std::pow(kTwoPi * n, 2);
      const auto small = TruncatedOperator::build(q, vec({0}), kTwoPi * 3 * n);
      const auto large = TruncatedOperator::build(q, vec({0}), kTwoPi * 6 * n);
      EXPECT_EQ(geometric_multiplicity(small, lambda).geometric,
                geometric_multiplicity(large, lambda).geometric);
    }
  }
}

TEST(GeometricMultiplicity, BorderlineRankWarns) {
  // A coefficient chosen so that the obstruction sits right at the rank threshold.
  const double lambda = kTwoPi * kTwoPi;
  const auto probe = TruncatedOperator::build(oned_potential({1.0}), vec({0}), kTwoPi * 3);
  const double threshold = kDefaultRankTol * probe.norm();
  const double a = std::sqrt(threshold) * kTwoPi;  // a^2 / (4 pi^2) == threshold
  const auto op = TruncatedOperator::build(oned_potential({a}), vec({0}), kTwoPi * 3);
  EXPECT_FALSE(geometric_multiplicity(op, lambda).warnings.empty());
}

TEST(JordanProbe, ChainForUntunedOneDimensionalPotential) {
  const double lambda = kTwoPi * kTwoPi;
  const auto op = TruncatedOperator::build(oned_potential({0.8}), vec({0}), kTwoPi * 3);
  const auto probe = jordan_probe(op, lambda);
  EXPECT_EQ(probe.geometric, 1);
  EXPECT_EQ(probe.longest_chain, 2);
  EXPECT_TRUE(probe.has_chain());
  ASSERT_GE(probe.ranks.size(), 2U);
  EXPECT_EQ(probe.ranks[0], static_cast<int>(op.size()) - 1);
  EXPECT_EQ(probe.ranks[1], static_cast<int>(op.size()) - 2);

  const auto tuned = TruncatedOperator::build(oned_potential({0.8, -0.64 / lambda}), vec({0}), kTwoPi * 3);
  EXPECT_FALSE(jordan_probe(tuned, lambda).has_chain());
}

TEST(SolveChain, ConsistentSystemHasSmallResidual) {
  const double lambda = kTwoPi * kTwoPi;
  const auto op = TruncatedOperator::build(oned_potential({0.8, 0.3}), vec({0}), kTwoPi * 3);
  const auto plus = eigenvector_backsolve(op, static_cast<std::size_t>(at(op, {1})));
  const auto chain = solve_chain(op, lambda, plus.vector);
  EXPECT_LT(chain.relative_residual, 1e-10);
  EXPECT_GT(std::abs(chain.vector(at(op, {-1}))), 1e-3);
}

TEST(ClosedCone, EmptyForMissingBaseAndGrowsWithCutoff) {
  const FourierPotential q(kId, {{{1, 0}, 0.1}, {{1, 1}, 0.1}});
  const auto small = TruncatedOperator::build(q, vec({0.1, 0.2}), 3.0);
  const auto large = TruncatedOperator::build(q, vec({0.1, 0.2}), 5.0);
  EXPECT_TRUE(closed_cone(small, {9, 9}).empty());
  EXPECT_LT(closed_cone(small, {0, 0}).size(), closed_cone(large, {0, 0}).size());
  // Every cone member's predecessors above the base plane are present.
  for (std::size_t i : closed_cone(small, {0, 0})) {
    const auto& g = small.indices()[i];
    if (g == IndexVector{0, 0}) continue;
    for (const auto& w : small.potential_support())
      if (small.orientation().plane(g - w) > 0) {
        EXPECT_TRUE(small.position(g - w));
      }
  }
}

TEST(Restricted, PrincipalSubmatrix) {
  const FourierPotential q(kId, {{{1, 0}, 0.1}});
  const auto op = TruncatedOperator::build(q, vec({0, 0}), 2.0);
  const auto sub = op.restricted([](const IndexVector& g) { return g[0] >= 0; });
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = 0; j < sub.size(); ++j)
      EXPECT_EQ(sub.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                op.matrix()(at(op, sub.indices()[i]), at(op, sub.indices()[j])));
}

TEST(MatrixCsv, CellsAreComplexLiterals) {
  const FourierPotential q(kId, {{{1, 0}, {0.5, -0.25}}});
  const auto op = TruncatedOperator::build(q, vec({0, 0}), 1.0);
  std::ostringstream os;
  write_matrix_csv(os, op);
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_NE(text.find("0.5-0.25i"), std::string::npos);
  EXPECT_NE(text.find("1+0i"), std::string::npos);
}
