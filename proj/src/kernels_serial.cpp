#include "ergokit/kernels.hpp"

#include "ergokit/haar.hpp"

namespace ergokit::kernels {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace detail {

WorkSampler::WorkSampler(const DensityMatrix& rho, const Hamiltonian& h)
    : traceless(rho.matrix()), hamiltonian(h.matrix()), shift(0.0) {
  if (rho.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  const double inv_d = 1.0 / static_cast<double>(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) traceless(i, i) -= inv_d;
  shift = trace_product_real(traceless, hamiltonian);
}

double WorkSampler::operator()(std::uint64_t seed, std::uint64_t index) const {
  Engine rng = stream_engine(seed, index);
  const ComplexMatrix u = haar_unitary(traceless.dim(), rng);
  return shift - trace_product_real(conjugate_by(u, traceless), hamiltonian);
}

}  // namespace detail

std::vector<double> work_samples_serial(const DensityMatrix& rho, const Hamiltonian& h, std::uint64_t seed,
                                        std::size_t n) {
  const detail::WorkSampler sample(rho, h);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = sample(seed, i);
  return w;
}

std::vector<WorkQuantities> work_quantities_serial(std::span<const DensityMatrix> states, const Hamiltonian& h) {
  std::vector<WorkQuantities> out;
  out.reserve(states.size());
  for (const auto& rho : states) out.push_back(work_quantities(rho, h));
  return out;
}

}  // namespace ergokit::kernels
