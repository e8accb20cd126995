#include <benchmark/benchmark.h>

#include <vector>

#include "ergokit/haar.hpp"
#include "ergokit/kernels.hpp"

using namespace ergokit;

namespace {

struct Fixture {
  DensityMatrix rho;
  Hamiltonian h;
  std::vector<DensityMatrix> batch;
};

Fixture make(std::size_t d) {
  Engine g = stream_engine(99, d);
  Fixture f{random_density(d, HilbertSchmidt{}, g), Hamiltonian::explicit_matrix(random_hermitian(d, g)), {}};
  for (int i = 0; i < 2000; ++i) f.batch.push_back(random_density(d, HilbertSchmidt{}, g));
  return f;
}

template <auto Kernel>
void work_samples(benchmark::State& state) {
  const auto f = make(static_cast<std::size_t>(state.range(0)));
  const std::size_t n = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.rho, f.h, 7, n));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Kernel>
void work_quantities(benchmark::State& state) {
  const auto f = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.batch, f.h));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.batch.size()));
}

}  // namespace

BENCHMARK(work_samples<kernels::work_samples_serial>)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(work_samples<kernels::work_samples_omp>)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(work_quantities<kernels::work_quantities_serial>)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(work_quantities<kernels::work_quantities_omp>)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
