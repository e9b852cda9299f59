#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "halfbloch/exact.hpp"
#include "halfbloch/index_vector.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/potential.hpp"

namespace halfbloch::cli {

/// Command parameters. Everything is optional; commands fall back to the
/// module defaults and echo what they used.
struct Params {
  std::optional<double> cutoff;
  std::optional<IndexVector> gamma;
  std::optional<Orientation> orientation;  // from "k" (1-based) and "sign"
  std::optional<int> order;
  std::optional<int> depth;
  std::optional<double> tail_tol;
  std::optional<std::string> method;
  std::optional<double> group_tol;
  std::optional<double> simple_tol;
  std::optional<double> denom_tol_rel;
  std::optional<double> rank_tol;
  std::optional<double> criterion_tol;
  std::optional<double> obstruction_tol;
  std::optional<int> n;
  std::optional<double> lambda;
  std::optional<int> member;  // 1-based position on the second plane
  std::vector<std::string> modes;
  std::optional<double> rho;
  std::optional<int> resolution;
  std::optional<double> threshold;
};

struct ProblemConfig {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> generators;
  CoefficientMap potential;
  /// Coefficients declared as rational multiples of pi^2, keyed like
  /// `potential`. Complete only when every entry was declared that way.
  std::map<IndexVector, ComplexRational> potential_pi2;
  bool all_pi2 = false;
  PotentialMode mode = PotentialMode::Summable;
  std::optional<double> truncation_radius;
  Eigen::VectorXd t;
  Params params;

  LatticeBasis basis() const;
  FourierPotential fourier_potential() const;
};

/// Validates and converts a config document. Throws ParseError naming the
/// offending field (dotted path).
ProblemConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file.
ProblemConfig load_config(const std::string& path);

}  // namespace halfbloch::cli
