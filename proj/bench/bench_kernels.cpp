#include <benchmark/benchmark.h>

#include "spinc/fqpoly.hpp"
#include "spinc/oracle.hpp"
#include "spinc/orbits.hpp"
#include "spinc/series.hpp"

using namespace spinc;

namespace {

Kernel kernel_of(const benchmark::State& s) { return s.range(0) ? Kernel::parallel : Kernel::serial; }

void BM_series_mul(benchmark::State& state)
{
    std::size_t T = static_cast<std::size_t>(state.range(1));
    TSeries a = make_psi_q(T), b = make_theta(T);
    for (auto _ : state)
        benchmark::DoNotOptimize(series_mul(a, b, kernel_of(state)));
}
BENCHMARK(BM_series_mul)->ArgsProduct({{0, 1}, {128, 256}})->Unit(benchmark::kMillisecond);

void BM_sieve(benchmark::State& state)
{
    const u32 p = 3;
    unsigned d = static_cast<unsigned>(state.range(1));
    std::vector<std::vector<u64>> lower(d / 2 + 1);
    for (unsigned k = 1; k <= d / 2; ++k)
        lower[k] = irreducible_codes(p, k);
    for (auto _ : state)
        benchmark::DoNotOptimize(sieve_irreducibles(p, d, lower, kernel_of(state)));
}
BENCHMARK(BM_sieve)->ArgsProduct({{0, 1}, {10, 12}})->Unit(benchmark::kMillisecond);

void BM_orbit_census(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(orbit_census(3, OrbitGroup::alpha_gamma, 10, kernel_of(state)));
}
BENCHMARK(BM_orbit_census)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_spin_closure(benchmark::State& state)
{
    u32 p = static_cast<u32>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_spin(4, p, WittType::minus, kernel_of(state)));
}
BENCHMARK(BM_spin_closure)->ArgsProduct({{0, 1}, {3, 5}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
