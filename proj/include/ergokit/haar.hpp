#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "ergokit/state.hpp"

namespace ergokit {

using Engine = std::mt19937_64;

/// Independent engine for sample `index` of the run seeded with `seed`.
/// Every index gets its own stream, so results do not depend on how the
/// indices are distributed over threads.
Engine stream_engine(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unitary: complex Ginibre matrix orthonormalized column
/// by column. Gram-Schmidt yields the QR factor whose R has a positive real
/// diagonal, which is the phase-corrected factor that makes Q exactly Haar.
ComplexMatrix haar_unitary(std::size_t dim, Engine& rng);

/// Hermitian matrix from the Gaussian unitary ensemble, (G + G^dagger)/2.
ComplexMatrix random_hermitian(std::size_t dim, Engine& rng);

struct HilbertSchmidt {};
struct Pure {};
struct FixedSpectrum {
  std::vector<double> values;
};
using PurityModel = std::variant<HilbertSchmidt, FixedSpectrum, Pure>;

/// Random state on `dims` (product gives the dimension). Throws
/// InvalidSpectrum for a FixedSpectrum that is not a probability vector of
/// matching length.
DensityMatrix random_density(std::vector<std::size_t> dims, const PurityModel& model, Engine& rng);
DensityMatrix random_density(std::size_t dim, const PurityModel& model, Engine& rng);

struct SampleConfig {
  std::size_t dim = 2;
  std::size_t n_samples = 100000;
  std::uint64_t seed = 0;
  PurityModel purity_model = HilbertSchmidt{};
  bool parallel = true;
};

struct McEstimate {
  double mean;
  double variance;  // unbiased sample variance
  double std_error_of_variance;  // jackknife
  std::size_t n;
};

struct WorkVarianceReport {
  McEstimate estimate;
  double analytic_variance;  // sigma_rho^2 sigma_H^2 / (d^2 - 1)
  double min_work;
  double max_work;
};

/// Sample mean, variance and jackknife standard error of the variance,
/// reduced pairwise in index order.
McEstimate estimate_variance(std::span<const double> samples);

/// Variance of W_U over cfg.n_samples Haar unitaries. cfg.dim must equal
/// the state's dimension.
WorkVarianceReport mc_work_variance(const DensityMatrix& rho, const Hamiltonian& h, const SampleConfig& cfg);

}  // namespace ergokit
