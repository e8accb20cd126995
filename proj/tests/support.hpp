#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ergokit/haar.hpp"

namespace testing {

using namespace ergokit;

inline Engine rng(std::uint64_t stream) { return stream_engine(0x5eedULL, stream); }

inline DensityMatrix random_state(std::size_t d, Engine& g) { return random_density(d, HilbertSchmidt{}, g); }

inline Hamiltonian random_hamiltonian(std::size_t d, Engine& g) {
  return Hamiltonian::explicit_matrix(random_hermitian(d, g));
}

inline Hamiltonian qubit_sum(std::size_t n, double e = 1.0) {
  return Hamiltonian::composite(std::vector<Hamiltonian>(n, Hamiltonian::equispaced(2, e)));
}

inline std::vector<double> random_probabilities(std::size_t d, Engine& g) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(d);
  for (auto& x : p) x = expo(g);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= s;
  return p;
}

inline DensityMatrix diag_state(const std::vector<double>& p) {
  return DensityMatrix(ComplexMatrix::diagonal(std::span<const double>(p)));
}

/// Lowest and highest sum_i p_{sigma(i)} e_i over all permutations sigma.
inline std::pair<double, double> brute_force_orbit_energies(std::vector<double> p, std::span<const double> e) {
  std::sort(p.begin(), p.end());
  double lo = 1e300, hi = -1e300;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * e[i];
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  } while (std::next_permutation(p.begin(), p.end()));
  return {lo, hi};
}

/// Spectrum of a convex mixture of coordinate permutations of q, which is
/// majorized by q.
inline std::vector<double> permutation_mixture(const std::vector<double>& q, Engine& g, int terms = 4) {
  std::vector<double> out(q.size(), 0.0);
  const auto w = random_probabilities(static_cast<std::size_t>(terms), g);
  for (int t = 0; t < terms; ++t) {
    std::vector<double> perm = q;
    std::shuffle(perm.begin(), perm.end(), g);
    for (std::size_t i = 0; i < q.size(); ++i) out[i] += w[static_cast<std::size_t>(t)] * perm[i];
  }
  return out;
}

}  // namespace testing
