#pragma once

// Shared generators and brute-force oracles for the test binaries.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/exact.hpp"
#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/potential.hpp"

namespace support {

using halfbloch::CoefficientMap;
using halfbloch::IndexVector;
using halfbloch::Orientation;
using halfbloch::Rational;

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Complex number with modulus at most `radius`, uniform in the disc.
inline std::complex<double> random_complex(std::mt19937_64& rng, double radius) {
  const double r = radius * std::sqrt(uniform_real(rng, 0.0, 1.0));
  const double phi = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
  return std::polar(r, phi);
}

/// Rational in (-1/2, 1/2) with denominator `den`, as a double. Exact in
/// binary only for power-of-two denominators; callers needing exact
/// collisions use those.
inline double random_rational(std::mt19937_64& rng, int den) {
  return static_cast<double>(uniform_int(rng, -(den / 2) + 1, den / 2 - 1)) / den;
}

/// Random index in the open half-lattice of `o`, oriented plane in
/// [1, max_plane], other entries in [-spread, spread].
inline IndexVector random_half_index(std::mt19937_64& rng, std::size_t d, Orientation o,
                                     int max_plane, int spread) {
  IndexVector v(d);
  for (std::size_t a = 0; a < d; ++a) v[a] = uniform_int(rng, -spread, spread);
  v[o.axis] = static_cast<std::int64_t>(o.sign) * uniform_int(rng, 1, max_plane);
  return v;
}

/// Up to `max_terms` distinct harmonics in the half-lattice of `o`.
inline CoefficientMap random_half_potential(std::mt19937_64& rng, std::size_t d, Orientation o,
                                            int max_terms, int max_plane, int spread,
                                            double radius) {
  CoefficientMap q;
  const auto terms = uniform_int(rng, 1, max_terms);
  for (std::int64_t i = 0; i < terms; ++i) {
    auto c = random_complex(rng, radius);
    if (c == std::complex<double>{}) c = radius / 2;
    q[random_half_index(rng, d, o, max_plane, spread)] = c;
  }
  return q;
}

/// Brute-force ball scan over a generous box, same boundary slack as the
/// library (relative 1e-12 on the squared radius).
inline std::vector<IndexVector> ball_by_box(const halfbloch::LatticeBasis& basis,
                                            const Eigen::VectorXd& center, double radius,
                                            std::int64_t box) {
  const auto d = basis.dimension();
  std::vector<IndexVector> out;
  std::vector<std::int64_t> n(d, -box);
  while (true) {
    IndexVector idx(n);
    if ((basis.to_cartesian(idx) - center).squaredNorm() <= radius * radius * (1.0 + 1e-12))
      out.push_back(idx);
    std::size_t a = d;
    bool done = true;
    while (a > 0) {
      --a;
      if (++n[a] <= box) {
        done = false;
        break;
      }
      n[a] = -box;
    }
    if (done) return out;
  }
}

/// Exact |b + t|^2 for the identity basis and rational t.
inline Rational exact_norm2(const IndexVector& b, const std::vector<Rational>& t) {
  Rational s = 0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    const Rational x = Rational(b[a]) + t[a];
    s += x * x;
  }
  return s;
}

}  // namespace support

namespace support {

/// Exact check of |sum| >= c(k) s for the lattice generated by the stored
/// doubles: |B N|^2 (G^{-1})_kk >= s^2 in rational arithmetic, using
/// c(k)^2 = 1 / (G^{-1})_kk.
inline bool separation_holds_exactly(const halfbloch::LatticeBasis& basis, std::size_t axis,
                                     const IndexVector& sum, std::int64_t s) {
  const auto d = basis.dimension();
  std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational acc = 0;
      for (std::size_t r = 0; r < d; ++r)
        acc += Rational(basis.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i))) *
               Rational(basis.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)));
      g[i][j] = acc;
    }
  Rational norm2 = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) norm2 += Rational(sum[i]) * g[i][j] * Rational(sum[j]);

  // Gauss-Jordan on [G | e_k] gives column k of G^{-1}.
  std::vector<std::vector<Rational>> a = g;
  std::vector<Rational> rhs(d, Rational(0));
  rhs[axis] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    while (a[pivot][c] == 0) ++pivot;
    std::swap(a[pivot], a[c]);
    std::swap(rhs[pivot], rhs[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < d; ++k) a[r][k] -= f * a[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  const Rational inv_kk = rhs[axis] / a[axis][axis];
  return norm2 * inv_kk >= Rational(s) * Rational(s);
}

}  // namespace support
