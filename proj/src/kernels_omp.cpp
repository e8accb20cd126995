#include <omp.h>

#include <exception>

#include "ergokit/kernels.hpp"

namespace ergokit::kernels {

std::vector<double> work_samples_omp(const DensityMatrix& rho, const Hamiltonian& h, std::uint64_t seed,
                                     std::size_t n) {
  const detail::WorkSampler sample(rho, h);
  std::vector<double> w(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) w[static_cast<std::size_t>(i)] = sample(seed, static_cast<std::uint64_t>(i));
  return w;
}

std::vector<WorkQuantities> work_quantities_omp(std::span<const DensityMatrix> states, const Hamiltonian& h) {
  std::vector<WorkQuantities> out(states.size());
  const auto count = static_cast<std::int64_t>(states.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = work_quantities(states[static_cast<std::size_t>(i)], h);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ergokit::kernels
