#include "halfbloch/rootfn.hpp"

#include <cmath>
#include <numbers>

#include "halfbloch/errors.hpp"

namespace halfbloch {

RootFunctionReport second_plane_solve(const FourierPotential& q, const EigenGroup& group,
                                      std::size_t member, const Eigen::VectorXd& t,
                                      double criterion_tol, double denom_tol_rel) {
  if (group.planes.size() < 2)
    throw std::invalid_argument("the group occupies a single plane; no second plane exists");
  const auto& second = group.planes[1].members;
  if (member >= second.size()) throw std::out_of_range("member is not on the second plane");
  const Orientation o = resolve_orientation(q, group.orientation);
  const LatticeBasis& basis = q.basis();

  RootFunctionReport report;
  report.group = group;
  report.member = member;
  report.target = second[member];
  report.criterion_tol = criterion_tol;

  const std::int64_t n1 = o.plane(group.members.front().index);
  const std::int64_t n2 = o.plane(report.target);
  const double guard = denom_tol_rel * (1.0 + group.lambda);

  // layers[m] holds the coefficients on oriented plane n2 + m.
  std::vector<CoefficientMap> layers(static_cast<std::size_t>(n1 - n2));
  layers[0].emplace(report.target, std::complex<double>(1.0, 0.0));
  for (std::int64_t m = 1; m < n1 - n2; ++m) {
    CoefficientMap numerators;
    for (const auto& [w, qw] : q.coefficients()) {
      const auto pw = o.plane(w);
      if (pw > m) continue;
      for (const auto& [g, c] : layers[static_cast<std::size_t>(m - pw)]) numerators[g + w] += qw * c;
    }
    auto& layer = layers[static_cast<std::size_t>(m)];
    for (auto& [g, num] : numerators) {
      const double d = group.lambda - eigenvalue(basis, g, t);
      if (std::abs(d) < guard) throw ResonanceError(g, d, "second_plane_solve");
      layer.emplace(g, num / d);
    }
  }
  for (const auto& layer : layers) report.coefficients.insert(layer.begin(), layer.end());

  bool vanishes = true;
  for (std::size_t i = 0; i < group.leading_count; ++i) {
    const IndexVector& b = group.members[i].index;
    std::complex<double> sum{};
    for (const auto& [w, qw] : q.coefficients()) {
      const auto pred_plane = n1 - o.plane(w);
      if (pred_plane < n2) continue;
      const auto& layer = layers[static_cast<std::size_t>(pred_plane - n2)];
      const auto it = layer.find(b - w);
      if (it != layer.end()) sum += qw * it->second;
    }
    report.criterion_values.push_back(sum);
    if (std::abs(sum) > criterion_tol) vanishes = false;
  }
  if (vanishes) {
    report.classification = RootClassification::Eigenfunction;
    report.bound = 0;
  } else {
    report.classification = RootClassification::AssociatedUpTo;
    report.bound = report.plane - 1;
  }
  return report;
}

FourierPotential oned_potential(const std::vector<std::complex<double>>& q) {
  CoefficientMap coeffs;
  for (std::size_t m = 0; m < q.size(); ++m)
    if (q[m] != std::complex<double>{}) coeffs.emplace(IndexVector{static_cast<std::int64_t>(m + 1)}, q[m]);
  return FourierPotential(LatticeBasis::scaled_identity(1, 2.0 * std::numbers::pi), std::move(coeffs));
}

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be a positive integer");
}

template <typename T>
T entry(const std::vector<T>& q, int m) {
  return m >= 1 && static_cast<std::size_t>(m) <= q.size() ? q[static_cast<std::size_t>(m - 1)] : T{};
}

}  // namespace

std::vector<std::complex<double>> oned_coefficients(int n,
                                                    const std::vector<std::complex<double>>& q) {
  check_n(n);
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  std::vector<std::complex<double>> c(static_cast<std::size_t>(2 * n));  // c[0] unused
  for (int p = 1; p < 2 * n; ++p) {
    std::complex<double> num = entry(q, p);
    for (int m = 1; m < p; ++m) num += entry(q, m) * c[static_cast<std::size_t>(p - m)];
    c[static_cast<std::size_t>(p)] = num / (four_pi2 * p * (2 * n - p));
  }
  c.erase(c.begin());
  return c;
}

std::complex<double> oned_coefficient(int n, const std::vector<std::complex<double>>& q, int p) {
  check_n(n);
  if (p < 1 || p > 2 * n - 1) throw std::out_of_range("p must lie in 1..2n-1");
  return oned_coefficients(n, q)[static_cast<std::size_t>(p - 1)];
}

std::complex<double> oned_double_criterion(int n, const std::vector<std::complex<double>>& q) {
  const auto c = oned_coefficients(n, q);
  std::complex<double> sum = entry(q, 2 * n);
  for (int p = 1; p < 2 * n; ++p) sum += entry(q, 2 * n - p) * c[static_cast<std::size_t>(p - 1)];
  return sum;
}

std::vector<ComplexRational> oned_coefficients_exact(int n, const std::vector<ComplexRational>& rho) {
  check_n(n);
  std::vector<ComplexRational> c(static_cast<std::size_t>(2 * n));
  for (int p = 1; p < 2 * n; ++p) {
    ComplexRational num = entry(rho, p);
    for (int m = 1; m < p; ++m) num += entry(rho, m) * c[static_cast<std::size_t>(p - m)];
    c[static_cast<std::size_t>(p)] = num / ComplexRational(4LL * p * (2 * n - p));
  }
  c.erase(c.begin());
  return c;
}

ComplexRational oned_double_criterion_exact(int n, const std::vector<ComplexRational>& rho) {
  const auto c = oned_coefficients_exact(n, rho);
  ComplexRational sum = entry(rho, 2 * n);
  for (int p = 1; p < 2 * n; ++p) sum += entry(rho, 2 * n - p) * c[static_cast<std::size_t>(p - 1)];
  return sum;
}

EigenfunctionForm classify_eigenfunction_form(const std::map<std::int64_t, std::complex<double>>& psi,
                                              int n, double zero_tol) {
  check_n(n);
  auto nonzero = [&](std::int64_t k) {
    const auto it = psi.find(k);
    return it != psi.end() && std::abs(it->second) > zero_tol;
  };
  auto any_nonzero = [&](auto pred) {
    for (const auto& [k, v] : psi)
      if (pred(k) && std::abs(v) > zero_tol) return true;
    return false;
  };
  if (any_nonzero([&](std::int64_t k) { return k < -n; }))
    throw ParseError("psi", "nonzero coefficient below -" + std::to_string(n));
  if (nonzero(-n)) return EigenfunctionForm::MinusForm;
  if (any_nonzero([&](std::int64_t k) { return k > -n && k < n; }))
    throw ParseError("psi", "coefficient at -n vanishes but the function is nonzero inside (-n, n)");
  if (nonzero(n)) return EigenfunctionForm::PlusForm;
  if (any_nonzero([&](std::int64_t k) { return k > n; }))
    throw ParseError("psi", "coefficients at -n and n vanish but the function is nonzero above n");
  return EigenfunctionForm::Zero;
}

const char* to_string(EigenfunctionForm form) {
  switch (form) {
    case EigenfunctionForm::MinusForm:
      return "MinusForm";
    case EigenfunctionForm::PlusForm:
      return "PlusForm";
    case EigenfunctionForm::Zero:
      return "Zero";
  }
  return "?";
}

}  // namespace halfbloch
