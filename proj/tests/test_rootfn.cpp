#include "halfbloch/rootfn.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <map>
#include <random>
#include <set>

#include "halfbloch/errors.hpp"
#include "halfbloch/galerkin.hpp"
#include "support.hpp"

using namespace halfbloch;
using support::vec;

namespace {

const LatticeBasis kId = LatticeBasis::scaled_identity(2);
const double kTwoPi = 2.0 * std::numbers::pi;
const double kFourPi2 = kTwoPi * kTwoPi;

EigenGroup unit_circle_group() {
  return degeneracy_group(kId, {1, 0}, vec({0, 0}), {0, Sign::Plus}, 4.0);
}

// Principal submatrix on {plane > plane(target)} plus the target itself:
// invariant for a lower-triangular operator, so a Jordan chain through the
// target shows up there.
TruncatedOperator member_block(const TruncatedOperator& op, const IndexVector& target) {
  const auto o = op.orientation();
  const auto base = o.plane(target);
  return op.restricted([&](const IndexVector& g) { return o.plane(g) > base || g == target; });
}

}  // namespace

TEST(SecondPlane, CriterionIsTheConnectingHarmonic) {
  const auto group = unit_circle_group();
  ASSERT_EQ(group.planes[1].members, (std::vector<IndexVector>{{0, -1}, {0, 1}}));
  const std::complex<double> a{0.3, 0.1};
  const std::complex<double> b{-0.2, 0.05};
  const FourierPotential q(kId, {{{1, -1}, a}, {{1, 1}, b}, {{2, 0}, 0.4}});

  const auto up = second_plane_solve(q, group, 1, vec({0, 0}));
  EXPECT_EQ(up.target, (IndexVector{0, 1}));
  ASSERT_EQ(up.criterion_values.size(), 1U);
  EXPECT_EQ(up.criterion_values[0], a);

  const auto down = second_plane_solve(q, group, 0, vec({0, 0}));
  EXPECT_EQ(down.target, (IndexVector{0, -1}));
  EXPECT_EQ(down.criterion_values[0], b);
  EXPECT_EQ(down.classification, RootClassification::AssociatedUpTo);
  EXPECT_EQ(down.bound, 1);
}

TEST(SecondPlane, EigenfunctionWhenHarmonicAbsent) {
  const auto group = unit_circle_group();
  const FourierPotential q(kId, {{{1, -1}, 0.3}, {{2, 1}, 0.2}});
  const auto r = second_plane_solve(q, group, 0, vec({0, 0}));
  EXPECT_EQ(r.classification, RootClassification::Eigenfunction);
  EXPECT_EQ(r.bound, 0);
  EXPECT_EQ(r.coefficients.size(), 1U);
}

TEST(SecondPlane, AgreesWithJordanProbe) {
  const auto group = unit_circle_group();
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientMap coeffs;
    coeffs[{1, -1}] = support::uniform_int(rng, 0, 1) ? support::random_complex(rng, 0.5) + 0.1
                                                      : std::complex<double>{};
    coeffs[{1, 1}] = support::uniform_int(rng, 0, 1) ? support::random_complex(rng, 0.5) + 0.1
                                                     : std::complex<double>{};
    coeffs[{1, 0}] = support::random_complex(rng, 0.5);
    coeffs[{2, -1}] = support::random_complex(rng, 0.5);
    const FourierPotential q(kId, coeffs);
    const auto op = TruncatedOperator::build(q, vec({0, 0}), 4.0, Orientation{0, Sign::Plus});
    for (std::size_t j = 0; j < 2; ++j) {
      const auto r = second_plane_solve(q, group, j, vec({0, 0}));
      const auto probe = jordan_probe(member_block(op, r.target), 1.0);
      EXPECT_EQ(r.classification == RootClassification::Eigenfunction, !probe.has_chain());
    }
  }
}

TEST(SecondPlane, RejectsSinglePlaneGroupsAndBadMembers) {
  const auto simple = degeneracy_group(kId, {0, 0}, vec({0.1, 0.2}), {0, Sign::Plus}, 4.0);
  const FourierPotential q(kId, {{{1, 0}, 0.1}});
  EXPECT_THROW(second_plane_solve(q, simple, 0, vec({0.1, 0.2})), std::invalid_argument);
  EXPECT_THROW(second_plane_solve(q, unit_circle_group(), 2, vec({0, 0})), std::out_of_range);
}

TEST(SecondPlane, ThreePlaneGapFillsIntermediateLayer) {
  // lambda = 4 at t = 0 along axis 1: (2,0) leads, (0,+-2) are on plane 0,
  // with plane 1 in between.
  const auto group = degeneracy_group(kId, {2, 0}, vec({0, 0}), {0, Sign::Plus}, 8.0);
  ASSERT_EQ(group.planes[0].plane, 2);
  ASSERT_EQ(group.planes[1].plane, 0);
  const std::complex<double> a{0.2, 0}, b{0.1, 0.3};
  const FourierPotential q(kId, {{{1, 1}, a}, {{1, -1}, b}});
  const auto r = second_plane_solve(q, group, 0, vec({0, 0}));  // target (0,-2)
  // Plane 1 holds (1,-1) from w=(1,1) with denominator 4 - 2 = 2.
  const auto it = r.coefficients.find({1, -1});
  ASSERT_NE(it, r.coefficients.end());
  EXPECT_NEAR(std::abs(it->second - a / 2.0), 0.0, 1e-15);
  // (2,0) is reached from (1,-1) via w = (1,1): criterion a * a / 2.
  EXPECT_NEAR(std::abs(r.criterion_values[0] - a * a / 2.0), 0.0, 1e-15);
}

TEST(OneD, CoefficientExamples) {
  const std::complex<double> A{0.7, -0.2};
  EXPECT_NEAR(std::abs(oned_coefficient(1, {A}, 1) - A / kFourPi2), 0.0, 1e-15);
  // n = 2, p = 1: 4 pi^2 * 1 * 3.
  EXPECT_NEAR(std::abs(oned_coefficient(2, {A}, 1) - A / (3.0 * kFourPi2)), 0.0, 1e-15);
  EXPECT_THROW(oned_coefficient(1, {A}, 2), std::out_of_range);
  EXPECT_THROW(oned_coefficient(0, {A}, 1), std::invalid_argument);
}

TEST(OneD, CriterionExamples) {
  // n = 1: q_2 + q_1 c_1 = q_2 + q_1^2 / (4 pi^2).
  const std::complex<double> q1{0.8, 0.1}, q2{-0.3, 0.2};
  EXPECT_NEAR(std::abs(oned_double_criterion(1, {q1, q2}) - (q2 + q1 * q1 / kFourPi2)), 0.0, 1e-15);
  EXPECT_EQ(oned_double_criterion(1, {}), std::complex<double>{});
  EXPECT_EQ(oned_double_criterion(2, {0.0, 0.0, 0.0, 0.5}), std::complex<double>(0.5));
}

TEST(OneD, CoefficientsMatchGalerkinBacksolve) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::complex<double>> q;
    for (int m = 0; m < 5; ++m) q.push_back(support::random_complex(rng, 2.0));
    for (int n : {1, 2, 3}) {
      const auto op = TruncatedOperator::build(oned_potential(q), vec({0}), kTwoPi * 3 * n);
      const auto lead = op.position({-n});
      ASSERT_TRUE(lead);
      const auto r = eigenvector_backsolve(op, *lead, kDefaultGroupTol, 0.0);
      const auto c = oned_coefficients(n, q);
      for (int p = 1; p < 2 * n; ++p) {
        const auto x = r.vector(static_cast<Eigen::Index>(*op.position({-n + p})));
        EXPECT_NEAR(std::abs(x - c[static_cast<std::size_t>(p - 1)]), 0.0,
                    1e-12 * (1 + std::abs(x)));
      }
      // The row at +n is where the criterion appears as the unmatched right-hand side.
      ASSERT_TRUE(r.obstruction_row);
      EXPECT_EQ(op.indices()[*r.obstruction_row], (IndexVector{n}));
      EXPECT_NEAR(std::abs(r.obstruction) - std::abs(oned_double_criterion(n, q)), 0.0,
                  1e-11 * (1 + std::abs(r.obstruction)));
    }
  }
}

TEST(OneD, ExactTunedFamilyVanishes) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexRational r1(Rational(support::uniform_int(rng, -20, 20), support::uniform_int(rng, 1, 9)),
                             Rational(support::uniform_int(rng, -20, 20), support::uniform_int(rng, 1, 9)));
    const ComplexRational r2 = -(r1 * r1) / ComplexRational(4);
    EXPECT_TRUE(oned_double_criterion_exact(1, {r1, r2}).is_zero());
    if (!r1.is_zero()) {
      EXPECT_FALSE(oned_double_criterion_exact(1, {r1, r2 + ComplexRational(1)}).is_zero());
    }
  }
}

TEST(OneD, ExactMatchesDouble) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ComplexRational> rho;
    std::vector<std::complex<double>> q;
    for (int m = 0; m < 6; ++m) {
      rho.emplace_back(Rational(support::uniform_int(rng, -9, 9), 4), Rational(support::uniform_int(rng, -9, 9), 8));
      q.push_back(rho.back().to_complex(std::numbers::pi * std::numbers::pi));
    }
    for (int n : {1, 2, 3}) {
      const auto exact = oned_double_criterion_exact(n, rho).to_complex(std::numbers::pi * std::numbers::pi);
      EXPECT_NEAR(std::abs(oned_double_criterion(n, q) - exact), 0.0, 1e-9 * (1 + std::abs(exact)));
    }
  }
}

TEST(OneD, GeometricMultiplicityFollowsCriterion) {
  // A double eigenvalue at (2 pi n)^2 iff the criterion vanishes.
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexRational r1(Rational(support::uniform_int(rng, 1, 6), 2));
    const bool tuned = trial % 2 == 0;
    const ComplexRational r2 = tuned ? -(r1 * r1) / ComplexRational(4) : ComplexRational(Rational(1, 3));
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const std::vector<std::complex<double>> q{r1.to_complex(pi2), r2.to_complex(pi2)};
    const auto op = TruncatedOperator::build(oned_potential(q), vec({0}), kTwoPi * 3);
    EXPECT_EQ(geometric_multiplicity(op, kFourPi2).geometric, tuned ? 2 : 1);
  }
}

TEST(EigenfunctionForm, Classification) {
  using Psi = std::map<std::int64_t, std::complex<double>>;
  EXPECT_EQ(classify_eigenfunction_form(Psi{{-1, 1.0}, {0, 0.3}, {1, 0.2}, {4, 0.1}}, 1),
            EigenfunctionForm::MinusForm);
  EXPECT_EQ(classify_eigenfunction_form(Psi{{1, 1.0}, {3, 0.2}}, 1), EigenfunctionForm::PlusForm);
  EXPECT_EQ(classify_eigenfunction_form(Psi{{0, 1e-14}}, 1), EigenfunctionForm::Zero);
  EXPECT_EQ(classify_eigenfunction_form(Psi{}, 2), EigenfunctionForm::Zero);
  EXPECT_THROW(classify_eigenfunction_form(Psi{{-3, 1.0}}, 2), ParseError);
  EXPECT_THROW(classify_eigenfunction_form(Psi{{0, 1.0}, {1, 1.0}}, 1), ParseError);
  EXPECT_THROW(classify_eigenfunction_form(Psi{{3, 1.0}}, 2), ParseError);
  EXPECT_STREQ(to_string(EigenfunctionForm::PlusForm), "PlusForm");
}

TEST(EigenfunctionForm, KernelVectorsHaveHalfLineSupport) {
  // For a tuned potential both kernel vectors, from the backsolve, are of
  // one of the two forms and span both of them.
  const double a = 1.1;
  const auto op = TruncatedOperator::build(oned_potential({a, -a * a / kFourPi2}), vec({0}), kTwoPi * 6);
  std::set<EigenfunctionForm> seen;
  for (std::int64_t lead : {-1, 1}) {
    const auto r = eigenvector_backsolve(op, *op.position({lead}));
    ASSERT_EQ(r.status, Backsolve::Status::Eigenvector);
    std::map<std::int64_t, std::complex<double>> psi;
    for (std::size_t i = 0; i < op.size(); ++i) psi[op.indices()[i][0]] = r.vector(static_cast<Eigen::Index>(i));
    seen.insert(classify_eigenfunction_form(psi, 1));
  }
  EXPECT_EQ(seen, (std::set<EigenfunctionForm>{EigenfunctionForm::MinusForm, EigenfunctionForm::PlusForm}));
}
