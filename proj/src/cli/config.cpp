#include "halfbloch/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "halfbloch/errors.hpp"

namespace halfbloch::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ParseError(path.empty() ? key : path + "." + key, "unknown field");
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(field, "expected a finite number");
  return x;
}

double positive(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (!(x > 0.0)) throw ParseError(field, "expected a positive number");
  return x;
}

double non_negative(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (x < 0.0) throw ParseError(field, "expected a non-negative number");
  return x;
}

std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(field, "expected an integer");
  return v.get<std::int64_t>();
}

IndexVector index_vector(const json& v, const std::string& field, std::size_t dimension) {
  if (!v.is_array()) throw ParseError(field, "expected an integer array");
  if (v.size() != dimension)
    throw ParseError(field, "expected " + std::to_string(dimension) + " entries");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(integer(v[i], field + "[" + std::to_string(i) + "]"));
  return IndexVector(std::move(out));
}

Rational rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw ParseError(field, "expected an integer or a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(field, e.what());
  }
}

void parse_potential(const json& v, ProblemConfig& cfg) {
  if (!v.is_array()) throw ParseError("potential", "expected an array of coefficients");
  cfg.all_pi2 = true;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string path = "potential[" + std::to_string(i) + "]";
    const json& e = v[i];
    if (!e.is_object()) throw ParseError(path, "expected an object");
    reject_unknown(e, path, {"index", "re", "im", "pi2"});
    if (!e.contains("index")) throw ParseError(path + ".index", "missing");
    IndexVector idx = index_vector(e.at("index"), path + ".index", cfg.dimension);
    if (cfg.potential.count(idx)) throw ParseError(path + ".index", "duplicate index");

    std::complex<double> value;
    if (e.contains("pi2")) {
      if (e.contains("re") || e.contains("im"))
        throw ParseError(path, "give either re/im or pi2, not both");
      const json& p = e.at("pi2");
      ComplexRational exact;
      if (p.is_array()) {
        if (p.size() != 2) throw ParseError(path + ".pi2", "expected [re, im]");
        exact = {rational(p[0], path + ".pi2[0]"), rational(p[1], path + ".pi2[1]")};
      } else {
        exact = {rational(p, path + ".pi2"), Rational(0)};
      }
      value = exact.to_complex(pi2);
      cfg.potential_pi2.emplace(idx, exact);
    } else {
      cfg.all_pi2 = false;
      const double re = e.contains("re") ? number(e.at("re"), path + ".re") : 0.0;
      const double im = e.contains("im") ? number(e.at("im"), path + ".im") : 0.0;
      value = {re, im};
    }
    cfg.potential.emplace(std::move(idx), value);
  }
}

Orientation orientation(const json& params, std::size_t dimension) {
  const auto k = integer(params.at("k"), "params.k");
  if (k < 1 || static_cast<std::size_t>(k) > dimension)
    throw ParseError("params.k", "axis must lie in 1.." + std::to_string(dimension));
  Orientation o{static_cast<std::size_t>(k - 1), Sign::Plus};
  if (params.contains("sign")) {
    const json& s = params.at("sign");
    if (s == "+" || s == 1)
      o.sign = Sign::Plus;
    else if (s == "-" || s == -1)
      o.sign = Sign::Minus;
    else
      throw ParseError("params.sign", "expected \"+\" or \"-\"");
  }
  return o;
}

void parse_params(const json& v, ProblemConfig& cfg) {
  if (!v.is_object()) throw ParseError("params", "expected an object");
  reject_unknown(v, "params",
                 {"cutoff", "gamma", "k", "sign", "order", "depth", "tail_tol", "method",
                  "group_tol", "simple_tol", "denom_tol_rel", "rank_tol", "criterion_tol",
                  "obstruction_tol", "n", "lambda", "member", "mode", "rho", "resolution",
                  "threshold"});
  Params& p = cfg.params;
  if (v.contains("cutoff")) p.cutoff = non_negative(v.at("cutoff"), "params.cutoff");
  if (v.contains("gamma")) p.gamma = index_vector(v.at("gamma"), "params.gamma", cfg.dimension);
  if (v.contains("sign") && !v.contains("k")) throw ParseError("params.k", "required with sign");
  if (v.contains("k")) p.orientation = orientation(v, cfg.dimension);
  if (v.contains("order")) {
    const auto x = integer(v.at("order"), "params.order");
    if (x < 0) throw ParseError("params.order", "expected a non-negative integer");
    p.order = static_cast<int>(x);
  }
  if (v.contains("depth")) {
    const auto x = integer(v.at("depth"), "params.depth");
    if (x < 0) throw ParseError("params.depth", "expected a non-negative integer");
    p.depth = static_cast<int>(x);
  }
  if (v.contains("method")) {
    const json& m = v.at("method");
    if (!m.is_string() || (m != "series" && m != "closed-form" && m != "both"))
      throw ParseError("params.method", "expected \"series\", \"closed-form\" or \"both\"");
    p.method = m.get<std::string>();
  }
  const std::pair<const char*, std::optional<double> Params::*> tolerances[] = {
      {"tail_tol", &Params::tail_tol},           {"group_tol", &Params::group_tol},
      {"simple_tol", &Params::simple_tol},       {"denom_tol_rel", &Params::denom_tol_rel},
      {"rank_tol", &Params::rank_tol},           {"criterion_tol", &Params::criterion_tol},
      {"obstruction_tol", &Params::obstruction_tol}};
  for (const auto& [name, member] : tolerances)
    if (v.contains(name)) p.*member = positive(v.at(name), std::string("params.") + name);
  if (v.contains("n")) {
    const auto x = integer(v.at("n"), "params.n");
    if (x < 1) throw ParseError("params.n", "expected a positive integer");
    p.n = static_cast<int>(x);
  }
  if (v.contains("lambda")) p.lambda = non_negative(v.at("lambda"), "params.lambda");
  if (v.contains("member")) {
    const auto x = integer(v.at("member"), "params.member");
    if (x < 1) throw ParseError("params.member", "expected a positive integer");
    p.member = static_cast<int>(x);
  }
  if (v.contains("mode")) {
    const json& m = v.at("mode");
    std::vector<json> items = m.is_array() ? std::vector<json>(m.begin(), m.end())
                                           : std::vector<json>{m};
    for (const auto& item : items) {
      if (!item.is_string() ||
          (item != "1d-criterion" && item != "2d-second-plane" && item != "oracle"))
        throw ParseError("params.mode",
                         "expected \"1d-criterion\", \"2d-second-plane\" or \"oracle\"");
      p.modes.push_back(item.get<std::string>());
    }
  }
  if (v.contains("rho")) p.rho = non_negative(v.at("rho"), "params.rho");
  if (v.contains("resolution")) {
    const auto x = integer(v.at("resolution"), "params.resolution");
    if (x < 2) throw ParseError("params.resolution", "expected an integer >= 2");
    p.resolution = static_cast<int>(x);
  }
  if (v.contains("threshold")) p.threshold = non_negative(v.at("threshold"), "params.threshold");
}

}  // namespace

LatticeBasis ProblemConfig::basis() const {
  try {
    return LatticeBasis(generators);
  } catch (const DegenerateBasisError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError("generators", e.what());
  }
}

FourierPotential ProblemConfig::fourier_potential() const {
  try {
    return FourierPotential(basis(), potential, mode, truncation_radius);
  } catch (const std::invalid_argument& e) {
    throw ParseError("potential", e.what());
  }
}

ProblemConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ParseError("config", "expected a JSON object");
  reject_unknown(doc, "",
                 {"dimension", "generators", "potential", "potential_mode", "truncation_radius",
                  "t", "params"});
  ProblemConfig cfg;
  if (!doc.contains("dimension")) throw ParseError("dimension", "missing");
  const auto d = integer(doc.at("dimension"), "dimension");
  if (d < 1) throw ParseError("dimension", "expected a positive integer");
  cfg.dimension = static_cast<std::size_t>(d);

  if (doc.contains("generators")) {
    const json& g = doc.at("generators");
    if (!g.is_array() || g.size() != cfg.dimension)
      throw ParseError("generators", "expected " + std::to_string(cfg.dimension) + " vectors");
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::string path = "generators[" + std::to_string(k) + "]";
      if (!g[k].is_array() || g[k].size() != cfg.dimension)
        throw ParseError(path, "expected " + std::to_string(cfg.dimension) + " numbers");
      std::vector<double> v;
      for (std::size_t i = 0; i < g[k].size(); ++i)
        v.push_back(number(g[k][i], path + "[" + std::to_string(i) + "]"));
      cfg.generators.push_back(std::move(v));
    }
  } else {
    // Identity basis, or 2 pi in one dimension (period-1 potentials).
    const double scale = cfg.dimension == 1 ? 2.0 * std::numbers::pi : 1.0;
    for (std::size_t k = 0; k < cfg.dimension; ++k) {
      std::vector<double> v(cfg.dimension, 0.0);
      v[k] = scale;
      cfg.generators.push_back(std::move(v));
    }
  }

  if (doc.contains("potential")) parse_potential(doc.at("potential"), cfg);
  if (cfg.potential.empty()) cfg.all_pi2 = true;

  if (doc.contains("potential_mode")) {
    const json& m = doc.at("potential_mode");
    if (m == "summable")
      cfg.mode = PotentialMode::Summable;
    else if (m == "square-summable")
      cfg.mode = PotentialMode::SquareSummable;
    else
      throw ParseError("potential_mode", "expected \"summable\" or \"square-summable\"");
  }
  if (doc.contains("truncation_radius"))
    cfg.truncation_radius = positive(doc.at("truncation_radius"), "truncation_radius");

  cfg.t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cfg.dimension));
  if (doc.contains("t")) {
    const json& t = doc.at("t");
    if (!t.is_array() || t.size() != cfg.dimension)
      throw ParseError("t", "expected " + std::to_string(cfg.dimension) + " numbers");
    for (std::size_t i = 0; i < t.size(); ++i)
      cfg.t(static_cast<Eigen::Index>(i)) = number(t[i], "t[" + std::to_string(i) + "]");
  }

  if (doc.contains("params")) parse_params(doc.at("params"), cfg);
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config", e.what());
  }
  return parse_config(doc);
}

}  // namespace halfbloch::cli
