#include "halfbloch/cli/serialize.hpp"

#include <cmath>

namespace halfbloch::cli {

using nlohmann::json;

namespace {

// JSON has no infinity; an empty exclusion set is reported as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const IndexVector& v) { return json(v.values()); }

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const ComplexRational& z) {
  return {{"re", to_string(z.re)}, {"im", to_string(z.im)}};
}

json to_json(Orientation o) {
  return {{"k", o.axis + 1}, {"sign", o.sign == Sign::Plus ? "+" : "-"}};
}

json to_json(const BlochCoefficients& psi) {
  json entries = json::array();
  for (const auto& [delta, c] : psi.coefficients)
    entries.push_back({{"delta", to_json(delta)}, {"re", c.real()}, {"im", c.imag()}});
  json out = {{"gamma", to_json(psi.gamma)},
              {"t", to_json(psi.t)},
              {"lambda", psi.lambda},
              {"orientation", to_json(psi.orientation)},
              {"order", psi.order},
              {"tail", psi.tail},
              {"converged", psi.converged},
              {"entries", std::move(entries)}};
  if (!psi.term_masses.empty()) out["term_masses"] = psi.term_masses;
  return out;
}

json to_json(const EigenGroup& group) {
  json planes = json::array();
  for (const auto& plane : group.planes) {
    json members = json::array();
    for (const auto& m : plane.members) members.push_back(to_json(m));
    planes.push_back({{"p", plane.plane}, {"members", std::move(members)}});
  }
  return {{"lambda", group.lambda},
          {"orientation", to_json(group.orientation)},
          {"size", group.size()},
          {"leading_count", group.leading_count},
          {"planes", std::move(planes)},
          {"gap", finite_or_null(group.gap)}};
}

json to_json(const RootFunctionReport& report) {
  json coeffs = json::array();
  for (const auto& [index, c] : report.coefficients)
    coeffs.push_back({{"index", to_json(index)},
                      {"plane", report.group.orientation.plane(index)},
                      {"re", c.real()},
                      {"im", c.imag()}});
  json criteria = json::array();
  for (std::size_t i = 0; i < report.criterion_values.size(); ++i)
    criteria.push_back({{"leading", to_json(report.group.members[i].index)},
                        {"re", report.criterion_values[i].real()},
                        {"im", report.criterion_values[i].imag()}});
  const bool eigen = report.classification == RootClassification::Eigenfunction;
  return {{"group", to_json(report.group)},
          {"plane", report.plane},
          {"member", report.member + 1},
          {"target", to_json(report.target)},
          {"coefficients", std::move(coeffs)},
          {"criterion_values", std::move(criteria)},
          {"classification", eigen ? "Eigenfunction" : "AssociatedUpTo"},
          {"bound", report.bound},
          {"criterion_tol", report.criterion_tol}};
}

json to_json(const SurfaceSample& sample) {
  json points = json::array();
  for (const auto& p : sample.points)
    points.push_back(
        {{"t", to_json(p.t)}, {"distance", p.distance}, {"nearest", to_json(p.nearest)}});
  return {{"rho", sample.rho},
          {"resolution", sample.resolution},
          {"threshold", sample.threshold},
          {"count", sample.points.size()},
          {"points", std::move(points)}};
}

}  // namespace halfbloch::cli
