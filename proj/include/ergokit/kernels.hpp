#pragma once

// Data-parallel loops. Each kernel has a serial reference and an OpenMP
// version; both produce bit-identical output.

#include <cstdint>
#include <span>
#include <vector>

#include "ergokit/ergotropy.hpp"

namespace ergokit::kernels {

/// Recursive pairwise sum in index order.
double pairwise_sum(std::span<const double> values);

/// W_U for U drawn from stream_engine(seed, i), i = 0..n-1.
std::vector<double> work_samples_serial(const DensityMatrix& rho, const Hamiltonian& h, std::uint64_t seed,
                                        std::size_t n);
std::vector<double> work_samples_omp(const DensityMatrix& rho, const Hamiltonian& h, std::uint64_t seed,
                                     std::size_t n);

std::vector<WorkQuantities> work_quantities_serial(std::span<const DensityMatrix> states, const Hamiltonian& h);
std::vector<WorkQuantities> work_quantities_omp(std::span<const DensityMatrix> states, const Hamiltonian& h);

namespace detail {
/// Shared per-sample body: W for the traceless part of rho, which leaves
/// W unchanged and makes it exactly zero for a maximally mixed input.
struct WorkSampler {
  ComplexMatrix traceless;
  ComplexMatrix hamiltonian;
  double shift;  // Tr[(rho - I/d) H]
  WorkSampler(const DensityMatrix& rho, const Hamiltonian& h);
  double operator()(std::uint64_t seed, std::uint64_t index) const;
};
}  // namespace detail

}  // namespace ergokit::kernels
