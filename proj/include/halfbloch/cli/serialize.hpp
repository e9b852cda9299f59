#pragma once

#include <complex>

#include <Eigen/Core>
#include <json.hpp>

#include "halfbloch/bloch.hpp"
#include "halfbloch/exact.hpp"
#include "halfbloch/index_vector.hpp"
#include "halfbloch/isoenergetic.hpp"
#include "halfbloch/lattice.hpp"
#include "halfbloch/rootfn.hpp"
#include "halfbloch/spectrum.hpp"

namespace halfbloch::cli {

nlohmann::json to_json(const IndexVector& v);
nlohmann::json to_json(const Eigen::VectorXd& v);
nlohmann::json to_json(std::complex<double> z);
nlohmann::json to_json(const ComplexRational& z);
/// {"k": 1-based axis, "sign": "+" or "-"}
nlohmann::json to_json(Orientation o);
/// {"gamma", "t", "lambda", "orientation", "order", "tail", "converged",
///  "entries": [{"delta", "re", "im"}]} with entries in index order.
nlohmann::json to_json(const BlochCoefficients& psi);
nlohmann::json to_json(const EigenGroup& group);
nlohmann::json to_json(const RootFunctionReport& report);
nlohmann::json to_json(const SurfaceSample& sample);

}  // namespace halfbloch::cli
