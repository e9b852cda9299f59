#include "halfbloch/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "halfbloch/errors.hpp"

namespace halfbloch {

std::optional<Orientation> classify(const CoefficientMap& coeffs, std::size_t dimension) {
  for (std::size_t axis = 0; axis < dimension; ++axis) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      const Orientation o{axis, sign};
      bool inside = true;
      for (const auto& [index, value] : coeffs) {
        if (!in_halfspace(index, o)) {
          inside = false;
          break;
        }
      }
      if (inside) return o;
    }
  }
  return std::nullopt;
}

std::vector<AxisWitness> classification_witnesses(const CoefficientMap& coeffs,
                                                  std::size_t dimension) {
  if (classify(coeffs, dimension)) return {};
  std::vector<AxisWitness> out;
  for (std::size_t axis = 0; axis < dimension; ++axis) {
    AxisWitness w{axis, {}};
    const IndexVector* positive = nullptr;
    const IndexVector* negative = nullptr;
    for (const auto& [index, value] : coeffs) {
      if (index[axis] == 0) {
        w.indices = {index};
        break;
      }
      if (index[axis] > 0 && positive == nullptr) positive = &index;
      if (index[axis] < 0 && negative == nullptr) negative = &index;
      if (positive != nullptr && negative != nullptr) {
        w.indices = {*positive, *negative};
        break;
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

FourierPotential::FourierPotential(LatticeBasis basis)
    : FourierPotential(std::move(basis), CoefficientMap{}) {}

FourierPotential::FourierPotential(LatticeBasis basis, CoefficientMap coeffs, PotentialMode mode,
                                   std::optional<double> truncation_radius)
    : basis_(std::move(basis)), mode_(mode), truncation_radius_(truncation_radius) {
  const std::size_t d = basis_.dimension();
  if (mode_ == PotentialMode::SquareSummable) {
    if (d != 2 && d != 3)
      throw std::invalid_argument("square-summable potentials are admitted only for d = 2, 3");
    if (!truncation_radius_ || !(*truncation_radius_ >= 0.0))
      throw std::invalid_argument("square-summable mode requires a truncation radius");
  }
  for (auto& [index, value] : coeffs) {
    if (index.dimension() != d)
      throw std::invalid_argument("coefficient index " + to_string(index) + " has wrong dimension");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      throw std::invalid_argument("coefficient at " + to_string(index) + " is not finite");
    if (value == std::complex<double>(0.0, 0.0)) continue;
    if (truncation_radius_ && basis_.to_cartesian(index).norm() > *truncation_radius_) continue;
    coeffs_.emplace(index, value);
  }
  for (const auto& [index, value] : coeffs_) {
    l1_ += std::abs(value);
    l2_ += std::norm(value);
  }
  l2_ = std::sqrt(l2_);
  classification_ = classify(coeffs_, d);
}

std::complex<double> FourierPotential::coefficient(const IndexVector& gamma) const {
  const auto it = coeffs_.find(gamma);
  return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

bool FourierPotential::supported_in(Orientation orientation) const {
  if (orientation.axis >= dimension()) return false;
  for (const auto& [index, value] : coeffs_)
    if (!in_halfspace(index, orientation)) return false;
  return true;
}

bool FourierPotential::is_pt_symmetric() const {
  for (const auto& [index, value] : coeffs_)
    if (value.imag() != 0.0) return false;
  return true;
}

std::complex<double> FourierPotential::evaluate(const Eigen::VectorXd& x) const {
  std::complex<double> sum{};
  for (const auto& [index, value] : coeffs_) {
    const double phase = basis_.to_cartesian(index).dot(x);
    sum += value * std::polar(1.0, phase);
  }
  return sum;
}

Orientation resolve_orientation(const FourierPotential& q, std::optional<Orientation> requested) {
  if (requested) {
    if (!q.supported_in(*requested))
      throw ClassificationError("potential support is not contained in the requested half-lattice");
    return *requested;
  }
  if (!q.classification()) throw ClassificationError("potential is not in class S");
  return *q.classification();
}

}  // namespace halfbloch
