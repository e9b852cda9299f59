#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/potential.hpp"

namespace halfbloch {

struct SurfacePoint {
  Eigen::VectorXd t;
  double distance = 0.0;
  IndexVector nearest;
};

struct SurfaceSample {
  std::size_t dimension = 0;
  double rho = 0.0;
  int resolution = 0;
  double threshold = 0.0;
  std::vector<SurfacePoint> points;
};

struct SurfaceDistance {
  double distance = 0.0;
  IndexVector nearest;
};

/// min over gamma of | |gamma + t| - rho | with |gamma| <= cutoff, ties
/// broken towards the lexicographically smallest gamma. Requires
/// cutoff >= rho + diameter(F*) and t inside the ball of radius
/// diameter(F*)/2 (which holds for any point of the fundamental cell);
/// throws CutoffError otherwise.
SurfaceDistance distance_to_surface(const LatticeBasis& basis, const Eigen::VectorXd& t,
                                    double rho, double cutoff);

/// Grid point i of r along one axis: generator coordinate (2i - r) / (2r),
/// i.e. r equally spaced points starting at -1/2. The grid is symmetric
/// under negation modulo the lattice.
double grid_coordinate(int i, int resolution);

/// Scans resolution^d grid points of the fundamental cell (generator
/// coordinates in [-1/2, 1/2)) and keeps those within `threshold` of the
/// free isoenergetic surface |gamma + t| = rho.
SurfaceSample sample_surface(const LatticeBasis& basis, double rho, int resolution,
                             double threshold);

/// Same grid, but membership decided from the truncated Galerkin spectrum
/// of -Delta + q: some diagonal entry lambda has | sqrt(lambda) - rho | <=
/// threshold. For classified q this coincides with sample_surface.
SurfaceSample sample_surface_spectral(const FourierPotential& q, double rho, int resolution,
                                      double threshold);

/// Header "t1,..,td,distance,g1,..,gd" then one row per point.
void write_surface_csv(std::ostream& out, const SurfaceSample& sample);

}  // namespace halfbloch
