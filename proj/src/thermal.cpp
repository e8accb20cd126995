#include "ergokit/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ergokit {

namespace {

// Populations exp(-beta e_i)/Z, shifted by the dominant level so that no
// exponent is positive.
std::vector<double> gibbs_populations(std::span<const double> energies, double beta) {
  const std::size_t d = energies.size();
  const double ref = beta >= 0.0 ? energies.front() : energies.back();
  std::vector<double> p(d);
  double z = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = std::exp(-beta * (energies[i] - ref));
    z += p[i];
  }
  for (auto& x : p) x /= z;
  return p;
}

double nat_entropy(std::span<const double> p) { return shannon_entropy(p, std::exp(1.0)); }

GibbsMatch assemble(const Hamiltonian& h, double beta, std::vector<double> populations) {
  const auto& basis = h.eigenbasis();
  const std::size_t d = basis.dim();
  ComplexMatrix m(d);
  double energy = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (populations[k] == 0.0) continue;
    energy += populations[k] * h.energies()[k];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) += populations[k] * basis(r, k) * std::conj(basis(c, k));
  }
  const double s = nat_entropy(populations);
  return {beta, DensityMatrix(std::move(m), h.subsystem_dims()), s, energy};
}

}  // namespace

double gibbs_entropy(const Hamiltonian& h, double beta) {
  return nat_entropy(gibbs_populations(h.energies().values(), beta));
}

GibbsMatch match_gibbs(double target, const Hamiltonian& h, TemperatureBranch branch) {
  const auto e = h.energies().values();
  const std::size_t d = e.size();
  const double ln_d = std::log(static_cast<double>(d));
  if (!(target >= -1e-12) || target > ln_d + 1e-12)
    throw Error(ErrorCode::EntropyOutOfRange, "target entropy " + std::to_string(target) + " outside [0, ln d]");
  target = std::clamp(target, 0.0, ln_d);

  const double spread = e.back() - e.front();
  if (spread <= kDegeneracyTol * std::max(1.0, std::abs(e.back()))) {
    if (std::abs(target - ln_d) > 1e-12)
      throw Error(ErrorCode::DegenerateSpectrum, "fully degenerate Hamiltonian has only the maximally mixed Gibbs state");
    return assemble(h, 0.0, std::vector<double>(d, 1.0 / static_cast<double>(d)));
  }
  const double flat = 4.0 * static_cast<double>(d) * std::numeric_limits<double>::epsilon();
  if (target >= ln_d - flat) return assemble(h, 0.0, std::vector<double>(d, 1.0 / static_cast<double>(d)));

  const double sign = branch == TemperatureBranch::Positive ? 1.0 : -1.0;

  // Degeneracy of the level the limit beta -> +-inf concentrates on.
  std::size_t edge = 1;
  if (branch == TemperatureBranch::Positive) {
    while (edge < d && e[edge] - e.front() < kDegeneracyTol) ++edge;
  } else {
    while (edge < d && e.back() - e[d - 1 - edge] < kDegeneracyTol) ++edge;
  }
  const double edge_entropy = std::log(static_cast<double>(edge));
  auto edge_state = [&] {
    std::vector<double> p(d, 0.0);
    for (std::size_t k = 0; k < edge; ++k) p[branch == TemperatureBranch::Positive ? k : d - 1 - k] = 1.0 / edge;
    return assemble(h, sign * std::numeric_limits<double>::infinity(), std::move(p));
  };
  if (target <= edge_entropy + 1e-15) return edge_state();

  auto entropy_at = [&](double b) { return nat_entropy(gibbs_populations(e, sign * b)); };

  // Entropy decreases in |beta|: lo keeps S >= target, hi keeps S <= target.
  double lo = 0.0;
  double hi = 50.0 / spread;
  int doublings = 0;
  while (entropy_at(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) return edge_state();
  }

  double s_lo = entropy_at(lo);
  double s_hi = entropy_at(hi);
  for (int it = 0; it < kBisectionIterations; ++it) {
    if (!(s_lo >= target && s_hi <= target))
      throw Error(ErrorCode::NoConvergence, "entropy bracket lost monotonicity");
    const double b = 0.5 * (lo + hi);
    if (b <= lo || b >= hi) break;
    const double s = entropy_at(b);
    if (s >= target) {
      lo = b;
      s_lo = s;
    } else {
      hi = b;
      s_hi = s;
    }
    if (s == target) break;
  }
  const double best = (s_lo - target) <= (target - s_hi) ? lo : hi;
  return assemble(h, sign * best, gibbs_populations(e, sign * best));
}

TotalQuantities total_quantities(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  const double s = shannon_entropy(rho.spectrum().values(), std::exp(1.0));
  const auto cold = match_gibbs(s, h, TemperatureBranch::Positive);
  const auto hot = match_gibbs(s, h, TemperatureBranch::Negative);
  const double mean = trace_product_real(rho.matrix(), h.matrix());
  return {std::max(0.0, mean - cold.energy), std::min(0.0, mean - hot.energy), std::max(0.0, hot.energy - cold.energy),
          cold.beta, hot.beta};
}

}  // namespace ergokit
