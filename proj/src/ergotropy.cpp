#include "ergokit/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ergokit {

namespace {

void require_same_dim(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim())
    throw Error(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                  " differs from Hamiltonian dimension " + std::to_string(h.dim()));
}

DensityMatrix diagonal_in_basis(const ComplexMatrix& basis, std::span<const double> weights,
                                std::span<const std::size_t> dims) {
  const std::size_t d = basis.dim();
  ComplexMatrix m(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (weights[k] == 0.0) continue;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) += weights[k] * basis(r, k) * std::conj(basis(c, k));
  }
  return DensityMatrix(std::move(m), std::vector<std::size_t>(dims.begin(), dims.end()));
}

}  // namespace

double work_extracted(const DensityMatrix& rho, const Hamiltonian& h, const ComplexMatrix& u) {
  require_same_dim(rho, h);
  if (u.dim() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "unitary dimension differs from state");
  if (!u.is_unitary(kStateTol)) throw Error(ErrorCode::NotUnitary, "cycle operator is not unitary");
  return trace_product_real(rho.matrix(), h.matrix()) - trace_product_real(conjugate_by(u, rho.matrix()), h.matrix());
}

WorkQuantities work_quantities(const Spectrum& populations, double mean_energy, const Spectrum& energies) {
  if (populations.size() != energies.size())
    throw Error(ErrorCode::DimensionMismatch, "population and energy lists differ in length");
  const std::size_t d = populations.size();
  double passive = 0.0, active = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    passive += populations[i] * energies[d - 1 - i];
    active += populations[i] * energies[i];
  }
  WorkQuantities w{};
  w.mean_energy = mean_energy;
  w.passive_energy = passive;
  w.active_energy = active;
  w.ergotropy = std::max(0.0, mean_energy - passive);
  w.antiergotropy = std::min(0.0, mean_energy - active);
  w.capacity = w.ergotropy - w.antiergotropy;
  return w;
}

WorkQuantities work_quantities(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  return work_quantities(rho.spectrum(), trace_product_real(rho.matrix(), h.matrix()), h.energies());
}

double spectral_capacity(const Spectrum& populations, const Spectrum& energies) {
  if (populations.size() != energies.size())
    throw Error(ErrorCode::DimensionMismatch, "population and energy lists differ in length");
  const std::size_t d = populations.size();
  double c = 0.0;
  for (std::size_t j = 0; j < d / 2; ++j)
    c += (energies[d - 1 - j] - energies[j]) * (populations[d - 1 - j] - populations[j]);
  return c;
}

ExtremalStates extremal_states(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const auto lambda = rho.spectrum().values();
  const std::size_t d = lambda.size();
  std::vector<double> descending(lambda.rbegin(), lambda.rend());
  return {diagonal_in_basis(h.eigenbasis(), descending, rho.dims()),
          diagonal_in_basis(h.eigenbasis(), lambda.subspan(0, d), rho.dims())};
}

double qubit_capacity(double q, double c) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidBlochParameters, "population q must lie in [0, 1]");
  if (!(c >= 0.0) || c > std::sqrt(q * (1.0 - q)) + 1e-12)
    throw Error(ErrorCode::InvalidBlochParameters, "coherence c exceeds sqrt(q(1-q))");
  return std::sqrt((2.0 * q - 1.0) * (2.0 * q - 1.0) + 4.0 * c * c);
}

double state_variance(const DensityMatrix& rho) {
  // sum_i (l_i - 1/d)^2 equals Tr rho^2 - 1/d without the cancellation.
  const double mean = 1.0 / static_cast<double>(rho.dim());
  double s = 0.0;
  for (double l : rho.spectrum().values()) s += (l - mean) * (l - mean);
  return s;
}

double hamiltonian_variance(const Hamiltonian& h) {
  double mean = 0.0;
  for (double e : h.energies().values()) mean += e;
  mean /= static_cast<double>(h.dim());
  double s = 0.0;
  for (double e : h.energies().values()) s += (e - mean) * (e - mean);
  return s;
}

double equispaced_variance(std::size_t d, double quantum) {
  const double dd = static_cast<double>(d);
  return quantum * quantum * dd * (dd * dd - 1.0) / 12.0;
}

double variance_lower_bound(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  const double d = static_cast<double>(rho.dim());
  if (rho.dim() < 2) return 0.0;
  return 2.0 * std::sqrt(hamiltonian_variance(h)) * std::sqrt(state_variance(rho)) / std::sqrt(d * d - 1.0);
}

DualityCheck equispaced_duality(const DensityMatrix& rho, const Hamiltonian& h) {
  require_same_dim(rho, h);
  auto ladder = h.equispaced_params();
  if (!ladder) throw Error(ErrorCode::NotEquispaced, "Hamiltonian spectrum is not an equispaced ladder from 0");
  const auto w = work_quantities(rho, h);
  return {w.passive_energy + w.active_energy, static_cast<double>(ladder->levels - 1) * ladder->quantum};
}

DualityCheck equispaced_duality(const DensityMatrix& rho, std::size_t d, double quantum) {
  if (!(quantum > 0.0)) throw Error(ErrorCode::NotEquispaced, "energy quantum must be positive");
  return equispaced_duality(rho, Hamiltonian::equispaced(d, quantum));
}

std::size_t ladder_pair_weight(std::size_t d) { return d * d / 4; }

CapacityBounds equispaced_capacity_bounds(const Spectrum& spectrum, std::size_t d, double quantum) {
  if (!(quantum > 0.0) || d == 0) throw Error(ErrorCode::NotEquispaced, "ladder needs d >= 1 and E > 0");
  if (spectrum.size() != d) throw Error(ErrorCode::DimensionMismatch, "spectrum length differs from d");
  if (d == 1) return {0.0, 0.0};
  const double weight = static_cast<double>(ladder_pair_weight(d)) * quantum;
  const std::size_t half = d / 2;
  const double central = (d % 2 == 0) ? spectrum[half] - spectrum[half - 1] : spectrum[half + 1] - spectrum[half];
  return {weight * central, weight * (spectrum.back() - spectrum.front())};
}

}  // namespace ergokit
