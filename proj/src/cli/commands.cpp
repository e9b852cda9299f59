#include "halfbloch/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "halfbloch/bloch.hpp"
#include "halfbloch/cli/serialize.hpp"
#include "halfbloch/errors.hpp"
#include "halfbloch/galerkin.hpp"
#include "halfbloch/isoenergetic.hpp"
#include "halfbloch/rootfn.hpp"
#include "halfbloch/spectrum.hpp"

namespace halfbloch::cli {

using nlohmann::json;

namespace {

constexpr double kAgreementTol = 1e-10;
constexpr double kDefaultOracleCutoff = 6.0;
constexpr int kDefaultDepth = 6;
constexpr int kDefaultResolution = 21;
constexpr double kDefaultThreshold = 0.01;

IndexVector gamma_of(const ProblemConfig& cfg) {
  return cfg.params.gamma.value_or(IndexVector(cfg.dimension));
}

template <typename T>
T get(const std::optional<T>& v, T fallback) {
  return v.value_or(fallback);
}

json oned_criterion(const ProblemConfig& cfg, const FourierPotential& q, int n) {
  std::vector<std::complex<double>> coeffs;
  for (const auto& [idx, v] : q.coefficients()) {
    const auto m = static_cast<std::size_t>(idx[0]);
    if (coeffs.size() < m) coeffs.resize(m);
    coeffs[m - 1] = v;
  }
  const double tol = get(cfg.params.criterion_tol, kDefaultCriterionTol);
  const auto value = oned_double_criterion(n, coeffs);
  json out = {{"n", n}, {"criterion", to_json(value)}};
  bool zero = std::abs(value) <= tol;
  if (cfg.all_pi2) {
    std::vector<ComplexRational> rho;
    for (const auto& [idx, v] : cfg.potential_pi2) {
      const auto m = static_cast<std::size_t>(idx[0]);
      if (rho.size() < m) rho.resize(m);
      rho[m - 1] = v;
    }
    const auto exact = oned_double_criterion_exact(n, rho);
    out["criterion_pi2_exact"] = to_json(exact);
    zero = exact.is_zero();
  }
  out["zero"] = zero;
  out["multiplicity"] = zero ? 2 : 1;
  return out;
}

json oned_oracle(const ProblemConfig& cfg, const FourierPotential& q, int n) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double lambda = (two_pi * n) * (two_pi * n);
  const double cutoff = get(cfg.params.cutoff, two_pi * 3 * n);
  const double rank_tol = get(cfg.params.rank_tol, kDefaultRankTol);
  const double group_tol = get(cfg.params.group_tol, kDefaultGroupTol);
  const auto op = TruncatedOperator::build(q, cfg.t, cutoff);
  truncated_spectrum(op);  // triangularity guard
  const auto mult = geometric_multiplicity(op, lambda, rank_tol, group_tol);
  const auto probe = jordan_probe(op, lambda, rank_tol, group_tol);

  json forms = json::array();
  for (const IndexVector& lead : {IndexVector{-n}, IndexVector{n}}) {
    const auto pos = op.position(lead);
    if (!pos) continue;
    const auto solved = eigenvector_backsolve(
        op, *pos, group_tol, get(cfg.params.obstruction_tol, kDefaultObstructionTol));
    json entry = {{"leading", to_json(lead)}};
    if (solved.status == Backsolve::Status::Obstructed) {
      entry["status"] = "obstructed";
      entry["obstruction"] = to_json(solved.obstruction);
    } else {
      std::map<std::int64_t, std::complex<double>> psi;
      for (std::size_t i = 0; i < op.size(); ++i)
        psi[op.indices()[i][0]] = solved.vector(static_cast<Eigen::Index>(i));
      entry["status"] = "eigenvector";
      entry["form"] = to_string(classify_eigenfunction_form(psi, n));
    }
    forms.push_back(std::move(entry));
  }
  json out = {{"lambda", lambda},
              {"cutoff", cutoff},
              {"size", op.size()},
              {"geometric", mult.geometric},
              {"algebraic", mult.algebraic},
              {"longest_chain", probe.longest_chain},
              {"threshold", mult.threshold},
              {"smallest_singular_values", mult.smallest_singular_values},
              {"eigenvectors", std::move(forms)}};
  std::vector<std::string> warnings = mult.warnings;
  warnings.insert(warnings.end(), probe.warnings.begin(), probe.warnings.end());
  out["warnings"] = warnings;
  return out;
}

void require_oned_setting(const ProblemConfig& cfg, const FourierPotential& q) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (std::abs(cfg.generators[0][0] - two_pi) > 1e-12 * two_pi)
    throw ParseError("generators", "one-dimensional modes need the basis 2 pi");
  if (cfg.t(0) != 0.0) throw ParseError("t", "one-dimensional modes are posed at t = 0");
  if (!q.supported_in({0, Sign::Plus}))
    throw ClassificationError("one-dimensional modes need q_m = 0 for m <= 0");
}

}  // namespace

json cmd_classify(const ProblemConfig& cfg) {
  const auto q = cfg.fourier_potential();
  json out = {{"support_size", q.coefficients().size()}};
  if (const auto o = q.classification()) {
    out["classified"] = true;
    out["orientation"] = to_json(*o);
    out["pt_symmetric"] = q.is_pt_symmetric();
  } else {
    out["classified"] = false;
    out["status"] = "not in S";
    json witnesses = json::array();
    for (const auto& w : classification_witnesses(q.coefficients(), q.dimension())) {
      json idx = json::array();
      for (const auto& i : w.indices) idx.push_back(to_json(i));
      witnesses.push_back({{"k", w.axis + 1}, {"indices", std::move(idx)}});
    }
    out["witnesses"] = std::move(witnesses);
  }
  return out;
}

json cmd_bloch(const ProblemConfig& cfg) {
  const auto q = cfg.fourier_potential();
  const auto gamma = gamma_of(cfg);
  const std::string method = get<std::string>(cfg.params.method, "series");
  SeriesOptions opts;
  opts.max_order = get(cfg.params.order, opts.max_order);
  opts.tail_tol = get(cfg.params.tail_tol, opts.tail_tol);
  opts.denom_tol_rel = get(cfg.params.denom_tol_rel, opts.denom_tol_rel);
  opts.orientation = cfg.params.orientation;
  const int depth = get(cfg.params.depth, kDefaultDepth);

  json out = {{"method", method},
              {"tolerances",
               {{"tail_tol", opts.tail_tol}, {"denom_tol_rel", opts.denom_tol_rel}}}};
  std::optional<BlochCoefficients> series;
  std::optional<BlochCoefficients> closed;
  if (method != "closed-form") {
    series = bloch_series(q, gamma, cfg.t, opts);
    out["series"] = to_json(*series);
    out["series_residual"] = residual(q, *series);
    out["converged"] = series->converged;
  }
  if (method != "series") {
    closed = closed_form_coeffs(q, gamma, cfg.t, depth, cfg.params.orientation, opts.denom_tol_rel);
    out["closed_form"] = to_json(*closed);
    if (!series) out["converged"] = true;
  }
  if (series && closed) {
    const int planes = std::min(series->order, depth);
    out["compared_planes"] = planes;
    out["max_discrepancy"] = max_discrepancy(*series, *closed, planes);
  }
  return out;
}

OracleOutcome cmd_oracle(const ProblemConfig& cfg) {
  const auto q = cfg.fourier_potential();
  const double cutoff = get(cfg.params.cutoff, kDefaultOracleCutoff);
  const double group_tol = get(cfg.params.group_tol, kDefaultGroupTol);
  const double obstruction_tol = get(cfg.params.obstruction_tol, kDefaultObstructionTol);
  const auto op = TruncatedOperator::build(q, cfg.t, cutoff, cfg.params.orientation);

  OracleOutcome outcome;
  json& out = outcome.report;
  out = {{"cutoff", cutoff},
         {"size", op.size()},
         {"orientation", to_json(op.orientation())},
         {"tolerances", {{"group_tol", group_tol}, {"obstruction_tol", obstruction_tol},
                         {"agreement_tol", kAgreementTol}}}};
  if (const auto bad = op.triangularity_violation()) {
    outcome.triangular = false;
    out["triangular"] = false;
    out["violation"] = {{"row", to_json(op.indices()[bad->first])},
                        {"column", to_json(op.indices()[bad->second])}};
    out["spectrum_match"] = false;
    out["verdict"] = "fail";
    return outcome;
  }
  out["triangular"] = true;

  bool match = true;
  const auto spectrum = truncated_spectrum(op);
  for (std::size_t i = 0; i < op.size(); ++i) {
    const auto entry = op.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    if (entry.imag() != 0.0 || spectrum[i] != eigenvalue(q.basis(), op.indices()[i], cfg.t))
      match = false;
  }
  out["spectrum_match"] = match;

  const auto gamma = gamma_of(cfg);
  json agreement = {{"leading", to_json(gamma)}};
  bool agree = true;
  if (const auto pos = op.position(gamma)) {
    const auto solved = eigenvector_backsolve(op, *pos, group_tol, obstruction_tol);
    if (solved.status == Backsolve::Status::Obstructed) {
      agreement["status"] = "obstructed";
      agreement["obstruction_row"] = to_json(op.indices()[*solved.obstruction_row]);
    } else {
      std::int64_t top = op.plane(*pos);
      for (std::size_t i = 0; i < op.size(); ++i) top = std::max(top, op.plane(i));
      const int depth = static_cast<int>(top - op.plane(*pos));
      try {
        const auto closed = closed_form_coeffs(q, gamma, cfg.t, depth, op.orientation(),
                                               get(cfg.params.denom_tol_rel, kDenomTolRel));
        const auto cone = closed_cone(op, gamma);
        double worst = 0.0;
        for (std::size_t i : cone)
          worst = std::max(worst, std::abs(solved.vector(static_cast<Eigen::Index>(i)) -
                                            closed.at(op.indices()[i] - gamma)));
        agreement["status"] = "compared";
        agreement["cone_size"] = cone.size();
        agreement["max_error"] = worst;
        agree = worst < kAgreementTol;
      } catch (const ResonanceError& e) {
        agreement["status"] = "resonant";
        agreement["detail"] = e.what();
      }
    }
  } else {
    agreement["status"] = "outside truncation";
  }
  out["eigenvector_agreement"] = std::move(agreement);
  out["verdict"] = match && agree ? "pass" : "fail";
  return outcome;
}

json cmd_multiplicity(const ProblemConfig& cfg) {
  const auto q = cfg.fourier_potential();
  std::vector<std::string> modes = cfg.params.modes;
  if (modes.empty())
    modes = cfg.dimension == 1 ? std::vector<std::string>{"1d-criterion", "oracle"}
                               : std::vector<std::string>{"2d-second-plane", "oracle"};
  const auto has = [&](const char* m) { return std::find(modes.begin(), modes.end(), m) != modes.end(); };
  const double criterion_tol = get(cfg.params.criterion_tol, kDefaultCriterionTol);
  const double rank_tol = get(cfg.params.rank_tol, kDefaultRankTol);
  const double group_tol = get(cfg.params.group_tol, kDefaultGroupTol);

  json out = {{"modes", modes},
              {"tolerances",
               {{"criterion_tol", criterion_tol}, {"rank_tol", rank_tol}, {"group_tol", group_tol}}}};

  if (cfg.dimension == 1) {
    if (has("2d-second-plane"))
      throw ParseError("params.mode", "2d-second-plane needs dimension >= 2");
    if (!cfg.params.n) throw ParseError("params.n", "required for one-dimensional modes");
    require_oned_setting(cfg, q);
    const int n = *cfg.params.n;
    if (has("1d-criterion")) out["criterion"] = oned_criterion(cfg, q, n);
    if (has("oracle")) out["oracle"] = oned_oracle(cfg, q, n);
    if (out.contains("criterion") && out.contains("oracle")) {
      const bool double_root = out["criterion"]["zero"].get<bool>();
      const int geometric = out["oracle"]["geometric"].get<int>();
      out["verdict"] = (double_root == (geometric == 2)) ? "consistent" : "inconsistent";
    }
    return out;
  }

  if (has("1d-criterion")) throw ParseError("params.mode", "1d-criterion needs dimension 1");
  const auto gamma = gamma_of(cfg);
  const LatticeBasis& basis = q.basis();
  const Orientation o = resolve_orientation(q, cfg.params.orientation);
  const double need = required_cutoff(basis, gamma, cfg.t);
  const double cutoff = std::max(need, get(cfg.params.cutoff, 0.0));
  const auto group = degeneracy_group(basis, gamma, cfg.t, o, cutoff, group_tol);
  out["group"] = to_json(group);
  const std::size_t member = static_cast<std::size_t>(get(cfg.params.member, 1) - 1);

  std::optional<RootFunctionReport> report;
  if (has("2d-second-plane")) {
    report = second_plane_solve(q, group, member, cfg.t, criterion_tol,
                                get(cfg.params.denom_tol_rel, kDenomTolRel));
    out["second_plane"] = to_json(*report);
  }
  if (has("oracle")) {
    const double lambda = get(cfg.params.lambda, group.lambda);
    const auto op = TruncatedOperator::build(q, cfg.t, cutoff, o);
    truncated_spectrum(op);
    const auto mult = geometric_multiplicity(op, lambda, rank_tol, group_tol);
    json oracle = {{"lambda", lambda},
                   {"cutoff", cutoff},
                   {"size", op.size()},
                   {"geometric", mult.geometric},
                   {"algebraic", mult.algebraic},
                   {"threshold", mult.threshold},
                   {"smallest_singular_values", mult.smallest_singular_values}};
    std::vector<std::string> warnings = mult.warnings;
    if (group.planes.size() >= 2 && member < group.planes[1].members.size()) {
      // Invariant subspace: everything above the second plane plus b_{2,j}.
      const IndexVector target = group.planes[1].members[member];
      const auto n2 = o.plane(target);
      const auto sub = op.restricted(
          [&](const IndexVector& g) { return o.plane(g) > n2 || g == target; });
      const auto probe = jordan_probe(sub, lambda, rank_tol, group_tol);
      oracle["subspace_size"] = sub.size();
      oracle["ranks"] = probe.ranks;
      oracle["longest_chain"] = probe.longest_chain;
      oracle["has_chain"] = probe.has_chain();
      warnings.insert(warnings.end(), probe.warnings.begin(), probe.warnings.end());
    }
    oracle["warnings"] = warnings;
    out["oracle"] = std::move(oracle);
  }
  if (report && out.contains("oracle") && out["oracle"].contains("has_chain")) {
    const bool eigen = report->classification == RootClassification::Eigenfunction;
    const bool chain = out["oracle"]["has_chain"].get<bool>();
    out["verdict"] = eigen != chain ? "consistent" : "inconsistent";
  }
  return out;
}

json cmd_fermi(const ProblemConfig& cfg) {
  if (!cfg.params.rho) throw ParseError("params.rho", "required");
  const double rho = *cfg.params.rho;
  const int resolution = get(cfg.params.resolution, kDefaultResolution);
  const double threshold = get(cfg.params.threshold, kDefaultThreshold);
  const auto q = cfg.fourier_potential();
  const auto sample = sample_surface(q.basis(), rho, resolution, threshold);
  json out = to_json(sample);
  if (!q.empty()) {
    const auto spectral = sample_surface_spectral(q, rho, resolution, threshold);
    bool same = spectral.points.size() == sample.points.size();
    for (std::size_t i = 0; same && i < sample.points.size(); ++i)
      same = spectral.points[i].t == sample.points[i].t &&
             spectral.points[i].distance == sample.points[i].distance;
    out["potential_independent"] = same;
  }
  return out;
}

CommandResult run_command(const std::string& command, const ProblemConfig& cfg, Format format) {
  CommandResult result;
  try {
    if (command == "classify") {
      result.output = cmd_classify(cfg).dump(2);
    } else if (command == "bloch") {
      const auto report = cmd_bloch(cfg);
      result.output = report.dump(2);
      if (!report.value("converged", true)) {
        result.exit_code = kExitNonConvergence;
        result.error = "series tail above tail_tol after the maximal order";
      }
    } else if (command == "oracle") {
      if (format == Format::Csv) {
        const auto q = cfg.fourier_potential();
        const auto op = TruncatedOperator::build(q, cfg.t, get(cfg.params.cutoff, kDefaultOracleCutoff),
                                                 cfg.params.orientation);
        std::ostringstream os;
        write_matrix_csv(os, op);
        result.output = os.str();
        if (const auto bad = op.triangularity_violation()) {
          result.exit_code = kExitGuard;
          result.error = TriangularityError(op.indices()[bad->first], op.indices()[bad->second]).what();
        }
      } else {
        const auto outcome = cmd_oracle(cfg);
        result.output = outcome.report.dump(2);
        if (!outcome.triangular) {
          result.exit_code = kExitGuard;
          result.error = "Galerkin matrix is not strictly triangular; the potential is not in S";
        }
      }
    } else if (command == "multiplicity") {
      result.output = cmd_multiplicity(cfg).dump(2);
    } else if (command == "fermi") {
      if (format == Format::Csv) {
        if (!cfg.params.rho) throw ParseError("params.rho", "required");
        const auto sample =
            sample_surface(cfg.basis(), *cfg.params.rho, get(cfg.params.resolution, kDefaultResolution),
                           get(cfg.params.threshold, kDefaultThreshold));
        std::ostringstream os;
        write_surface_csv(os, sample);
        result.output = os.str();
      } else {
        result.output = cmd_fermi(cfg).dump(2);
      }
    } else {
      throw ParseError("command", "unknown command " + command);
    }
    if (!result.output.empty() && result.output.back() != '\n') result.output += '\n';
  } catch (const ParseError& e) {
    result = {kExitParse, "", e.what()};
  } catch (const GuardError& e) {
    result = {kExitGuard, "", e.what()};
  } catch (const ConvergenceError& e) {
    result = {kExitNonConvergence, "", e.what()};
  } catch (const std::invalid_argument& e) {
    result = {kExitParse, "", e.what()};
  } catch (const std::out_of_range& e) {
    result = {kExitParse, "", e.what()};
  } catch (const std::exception& e) {
    result = {kExitFailure, "", e.what()};
  }
  return result;
}

CommandResult run_command_file(const std::string& command, const std::string& config_path,
                               Format format) {
  try {
    return run_command(command, load_config(config_path), format);
  } catch (const ParseError& e) {
    return {kExitParse, "", e.what()};
  } catch (const std::exception& e) {
    return {kExitParse, "", e.what()};
  }
}

}  // namespace halfbloch::cli
