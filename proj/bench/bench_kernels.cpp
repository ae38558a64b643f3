#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "adhestring/kernels.hpp"

namespace {

using namespace adhestring;
using namespace adhestring::kernels;

std::vector<double> wave(std::size_t n, double phase) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.3 * std::sin(0.01 * static_cast<double>(i) + phase);
  return u;
}

template <bool Parallel>
void leapfrog(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto prev = wave(n, 0.0), cur = wave(n, 0.01);
  std::vector<double> next(n);
  const auto pot = PotentialSpec::exact();
  const LeapfrogCoefficients c{0.81, 1e-4};
  for (auto _ : state) {
    if constexpr (Parallel) leapfrog_step_omp(prev, cur, next, pot, c, SourceMode::gradient);
    else leapfrog_step_serial(prev, cur, next, pot, c, SourceMode::gradient);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Parallel>
void transport(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto z1 = wave(n, 0.0), z2 = wave(n, 1.0);
  std::vector<double> s1(n), s3(n);
  for (auto _ : state) {
    if constexpr (Parallel) transport_shift_omp(z1, z2, s1, s3);
    else transport_shift_serial(z1, z2, s1, s3);
    benchmark::DoNotOptimize(z1.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Parallel>
void picard(benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  const double dx = 10.0 / static_cast<double>(nx - 1);
  const ConeGeometry g{nx, nx / 2, dx, 0.9 * dx};
  const std::size_t ext = 2 * (g.nx - 1) + 1;
  const auto source = wave(g.nx * g.n_levels, 0.0);
  std::vector<double> primitive(ext * g.n_levels);
  for (std::size_t k = 0; k < primitive.size(); ++k) primitive[k] = 1e-3 * static_cast<double>(k % ext);
  const auto free_part = wave(g.nx * g.n_levels, 0.5);
  std::vector<double> out(g.nx * g.n_levels);
  for (auto _ : state) {
    if constexpr (Parallel) picard_cone_omp(source, primitive, free_part, out, g);
    else picard_cone_serial(source, primitive, free_part, out, g);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(leapfrog<false>)->Name("leapfrog_step/serial")->Arg(1001)->Arg(100001)->Arg(1000001);
BENCHMARK(leapfrog<true>)->Name("leapfrog_step/omp")->Arg(1001)->Arg(100001)->Arg(1000001);
BENCHMARK(transport<false>)->Name("transport_shift/serial")->Arg(2000)->Arg(200000)->Arg(2000000);
BENCHMARK(transport<true>)->Name("transport_shift/omp")->Arg(2000)->Arg(200000)->Arg(2000000);
BENCHMARK(picard<false>)->Name("picard_cone/serial")->Arg(201)->Arg(501);
BENCHMARK(picard<true>)->Name("picard_cone/omp")->Arg(201)->Arg(501);

BENCHMARK_MAIN();
