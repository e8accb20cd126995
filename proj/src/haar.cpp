#include "ergokit/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergokit/ergotropy.hpp"
#include "ergokit/kernels.hpp"

namespace ergokit {

namespace {

ComplexMatrix ginibre(std::size_t dim, Engine& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = {re, im};
    }
  return g;
}

}  // namespace

Engine stream_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

ComplexMatrix haar_unitary(std::size_t dim, Engine& rng) {
  ComplexMatrix q = ginibre(dim, rng);
  for (std::size_t c = 0; c < dim; ++c) {
    // Two passes of modified Gram-Schmidt keep orthogonality at rounding level.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < c; ++k) {
        cplx proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += std::conj(q(r, k)) * q(r, c);
        for (std::size_t r = 0; r < dim; ++r) q(r, c) -= proj * q(r, k);
      }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) q(r, c) /= norm;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t dim, Engine& rng) {
  const ComplexMatrix g = ginibre(dim, rng);
  return (g + g.adjoint()) * cplx(0.5);
}

DensityMatrix random_density(std::vector<std::size_t> dims, const PurityModel& model, Engine& rng) {
  std::size_t dim = 1;
  for (auto d : dims) dim *= d;
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "random states need dimension >= 2");

  if (std::holds_alternative<HilbertSchmidt>(model)) {
    const ComplexMatrix g = ginibre(dim, rng);
    ComplexMatrix m = g * g.adjoint();
    m *= cplx(1.0 / m.trace().real());
    m = (m + m.adjoint()) * cplx(0.5);
    return DensityMatrix(std::move(m), std::move(dims));
  }
  if (std::holds_alternative<Pure>(model)) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> psi(dim);
    for (auto& a : psi) {
      const double re = normal(rng);
      const double im = normal(rng);
      a = {re, im};
    }
    return DensityMatrix::pure(psi, std::move(dims));
  }
  const auto& values = std::get<FixedSpectrum>(model).values;
  if (values.size() != dim) throw Error(ErrorCode::InvalidSpectrum, "fixed spectrum length differs from dimension");
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidSpectrum, "fixed spectrum has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kStateTol) throw Error(ErrorCode::InvalidSpectrum, "fixed spectrum does not sum to 1");
  const ComplexMatrix u = haar_unitary(dim, rng);
  ComplexMatrix m = conjugate_by(u, ComplexMatrix::diagonal(std::span<const double>(values)));
  m = (m + m.adjoint()) * cplx(0.5);
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix random_density(std::size_t dim, const PurityModel& model, Engine& rng) {
  return random_density(std::vector<std::size_t>{dim}, model, rng);
}

McEstimate estimate_variance(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "no samples");
  const double nn = static_cast<double>(n);
  const double mean = kernels::pairwise_sum(samples) / nn;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (samples[i] - mean) * (samples[i] - mean);
  const double m2 = kernels::pairwise_sum(sq);
  McEstimate est{mean, n > 1 ? m2 / (nn - 1.0) : 0.0, 0.0, n};
  if (n == 2) {
    est.std_error_of_variance = est.variance * std::sqrt(2.0);
  } else if (n > 2) {
    // Leave-one-out variances from the downdated second moment.
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) loo[i] = (m2 - nn / (nn - 1.0) * sq[i]) / (nn - 2.0);
    const double loo_mean = kernels::pairwise_sum(loo) / nn;
    for (auto& v : loo) v = (v - loo_mean) * (v - loo_mean);
    est.std_error_of_variance = std::sqrt((nn - 1.0) / nn * kernels::pairwise_sum(loo));
  }
  return est;
}

WorkVarianceReport mc_work_variance(const DensityMatrix& rho, const Hamiltonian& h, const SampleConfig& cfg) {
  if (rho.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  if (cfg.dim != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "sample config dimension differs from the state");
  if (cfg.n_samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const auto w = cfg.parallel ? kernels::work_samples_omp(rho, h, cfg.seed, cfg.n_samples)
                              : kernels::work_samples_serial(rho, h, cfg.seed, cfg.n_samples);
  const double d = static_cast<double>(rho.dim());
  WorkVarianceReport r{};
  r.estimate = estimate_variance(w);
  r.analytic_variance = state_variance(rho) * hamiltonian_variance(h) / (d * d - 1.0);
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  r.min_work = *lo;
  r.max_work = *hi;
  return r;
}

}  // namespace ergokit
