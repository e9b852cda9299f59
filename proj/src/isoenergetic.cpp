#include "halfbloch/isoenergetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "halfbloch/errors.hpp"
#include "halfbloch/galerkin.hpp"

namespace halfbloch {

SurfaceDistance distance_to_surface(const LatticeBasis& basis, const Eigen::VectorXd& t,
                                    double rho, double cutoff) {
  if (static_cast<std::size_t>(t.size()) != basis.dimension())
    throw std::invalid_argument("t must match the lattice dimension");
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be non-negative");
  const double diam = basis.cell_diameter();
  const double need = rho + diam;
  if (cutoff < need) throw CutoffError(cutoff, need);
  if (t.norm() > 0.5 * diam * (1.0 + 1e-12))
    throw std::invalid_argument("t lies outside the fundamental cell neighbourhood");

  SurfaceDistance best{std::numeric_limits<double>::infinity(), IndexVector(basis.dimension())};
  // enumerate_ball is lexicographic, so strict improvement keeps the
  // smallest index among ties.
  for (const auto& gamma : enumerate_ball(basis, Eigen::VectorXd::Zero(t.size()), cutoff)) {
    const double dist = std::abs((basis.to_cartesian(gamma) + t).norm() - rho);
    if (dist < best.distance) best = {dist, gamma};
  }
  return best;
}

double grid_coordinate(int i, int resolution) {
  return static_cast<double>(2 * i - resolution) / (2.0 * resolution);
}

namespace {

template <typename Visit>
void scan_grid(const LatticeBasis& basis, int resolution, Visit visit) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const auto d = basis.dimension();
  std::vector<int> counter(d, 0);
  Eigen::VectorXd coords(static_cast<Eigen::Index>(d));
  while (true) {
    for (std::size_t a = 0; a < d; ++a)
      coords(static_cast<Eigen::Index>(a)) = grid_coordinate(counter[a], resolution);
    visit(Eigen::VectorXd(basis.matrix() * coords));
    std::size_t a = d;
    while (a > 0) {
      --a;
      if (++counter[a] < resolution) break;
      counter[a] = 0;
      if (a == 0) return;
    }
  }
}

}  // namespace

SurfaceSample sample_surface(const LatticeBasis& basis, double rho, int resolution,
                             double threshold) {
  SurfaceSample sample{basis.dimension(), rho, resolution, threshold, {}};
  const double cutoff = rho + basis.cell_diameter();
  scan_grid(basis, resolution, [&](const Eigen::VectorXd& t) {
    const auto hit = distance_to_surface(basis, t, rho, cutoff);
    if (hit.distance <= threshold) sample.points.push_back({t, hit.distance, hit.nearest});
  });
  return sample;
}

SurfaceSample sample_surface_spectral(const FourierPotential& q, double rho, int resolution,
                                      double threshold) {
  const LatticeBasis& basis = q.basis();
  SurfaceSample sample{basis.dimension(), rho, resolution, threshold, {}};
  const double cutoff = rho + basis.cell_diameter();
  scan_grid(basis, resolution, [&](const Eigen::VectorXd& t) {
    const auto op = TruncatedOperator::build(q, t, cutoff);
    const auto spectrum = truncated_spectrum(op);
    SurfacePoint best{t, std::numeric_limits<double>::infinity(), IndexVector(basis.dimension())};
    // Candidates compared in lexicographic index order for deterministic ties.
    std::vector<std::size_t> order(op.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return op.indices()[a] < op.indices()[b]; });
    for (std::size_t i : order) {
      const double dist = std::abs(std::sqrt(std::max(spectrum[i], 0.0)) - rho);
      if (dist < best.distance) {
        best.distance = dist;
        best.nearest = op.indices()[i];
      }
    }
    if (best.distance <= threshold) sample.points.push_back(std::move(best));
  });
  return sample;
}

void write_surface_csv(std::ostream& out, const SurfaceSample& sample) {
  const auto d = sample.dimension;
  for (std::size_t a = 0; a < d; ++a) out << 't' << a + 1 << ',';
  out << "distance";
  for (std::size_t a = 0; a < d; ++a) out << ",g" << a + 1;
  out << '\n';
  char buf[32];
  for (const auto& p : sample.points) {
    for (Eigen::Index a = 0; a < p.t.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", p.t(a));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", p.distance);
    out << buf;
    for (std::size_t a = 0; a < p.nearest.dimension(); ++a) out << ',' << p.nearest[a];
    out << '\n';
  }
}

}  // namespace halfbloch
