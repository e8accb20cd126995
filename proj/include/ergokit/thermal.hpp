#pragma once

#include "ergokit/state.hpp"

namespace ergokit {

enum class TemperatureBranch { Positive, Negative };

/// Gibbs state exp(-beta H)/Z whose von Neumann entropy (nats) matches a
/// target. beta is +inf / -inf when the target is the entropy of the
/// extremal eigenspace (a pure target for a nondegenerate edge level).
struct GibbsMatch {
  double beta;
  DensityMatrix gibbs_state;  // diagonal in the Hamiltonian eigenbasis
  double achieved_entropy;    // nats
  double energy;              // Tr[omega H]
};

inline constexpr int kBisectionIterations = 200;

/// Bisection on beta inside a bracket that starts at [0, 50/spread] and
/// doubles until the entropy crosses the target. Throws EntropyOutOfRange
/// outside [0, ln d] and DegenerateSpectrum when H is a multiple of the
/// identity and the target is not ln d.
GibbsMatch match_gibbs(double target_entropy, const Hamiltonian& h, TemperatureBranch branch);

/// Entropy (nats) of the Gibbs populations at a finite beta.
double gibbs_entropy(const Hamiltonian& h, double beta);

struct TotalQuantities {
  double total_ergotropy;
  double total_antiergotropy;
  double total_capacity;
  double beta;           // positive-branch match
  double beta_negative;  // negative-branch match
};

/// Many-copy limits from the entropy-matched Gibbs and inverse-Gibbs states.
TotalQuantities total_quantities(const DensityMatrix& rho, const Hamiltonian& h);

}  // namespace ergokit
