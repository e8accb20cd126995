#pragma once

#include <cstddef>

#include "ergokit/state.hpp"

namespace ergokit {

/// Energies reachable along the unitary orbit of a state.
struct WorkQuantities {
  double mean_energy;
  double ergotropy;       // >= 0
  double antiergotropy;   // <= 0
  double capacity;        // ergotropy - antiergotropy
  double passive_energy;  // lowest energy in the orbit
  double active_energy;   // highest energy in the orbit
};

struct ExtremalStates {
  DensityMatrix passive;
  DensityMatrix active;
};

/// Tr[rho H] - Tr[U rho U^dagger H].
double work_extracted(const DensityMatrix& rho, const Hamiltonian& h, const ComplexMatrix& u);

/// Spectral evaluation: with both spectra ascending, the passive energy is
/// sum_i l_i e_{d-1-i} and the active energy sum_i l_i e_i.
WorkQuantities work_quantities(const DensityMatrix& rho, const Hamiltonian& h);
WorkQuantities work_quantities(const Spectrum& populations, double mean_energy, const Spectrum& energies);

/// Paired form sum_{j < d/2} (e_{d-1-j} - e_j)(l_{d-1-j} - l_j); every term
/// is nonnegative.
double spectral_capacity(const Spectrum& populations, const Spectrum& energies);

ExtremalStates extremal_states(const DensityMatrix& rho, const Hamiltonian& h);

/// sqrt((2q-1)^2 + 4c^2), the qubit capacity in units of E.
double qubit_capacity(double q, double c);

/// sigma_rho^2 = Tr rho^2 - 1/d.
double state_variance(const DensityMatrix& rho);
/// sigma_H^2 = Tr H^2 - (Tr H)^2 / d.
double hamiltonian_variance(const Hamiltonian& h);
/// E^2 d (d^2 - 1) / 12 for the ladder 0, E, ..., (d-1)E.
double equispaced_variance(std::size_t d, double quantum);

/// 2 sigma_H sigma_rho / sqrt(d^2 - 1), a lower bound on the capacity.
double variance_lower_bound(const DensityMatrix& rho, const Hamiltonian& h);

struct DualityCheck {
  double sum;       // passive + active energy
  double expected;  // (d-1) E
};

/// For an equispaced ladder the passive and active energies sum to (d-1)E.
/// Throws NotEquispaced for other spectra.
DualityCheck equispaced_duality(const DensityMatrix& rho, const Hamiltonian& h);
DualityCheck equispaced_duality(const DensityMatrix& rho, std::size_t d, double quantum);

struct CapacityBounds {
  double lower;
  double upper;
};

/// floor(d^2/4) E times the spread l_{d-1} - l_0 (upper) or a central gap
/// (lower): l_{d/2} - l_{d/2-1} for even d, l_{floor(d/2)+1} - l_{floor(d/2)}
/// for odd d.
CapacityBounds equispaced_capacity_bounds(const Spectrum& spectrum, std::size_t d, double quantum);

/// floor(d^2/4)
std::size_t ladder_pair_weight(std::size_t d);

}  // namespace ergokit
