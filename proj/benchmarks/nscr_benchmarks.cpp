#include <benchmark/benchmark.h>

#include "nscr/dispersion.hpp"
#include "nscr/linear_engine.hpp"
#include "nscr/multipliers.hpp"
#include "nscr/solver.hpp"

namespace {

nscr::SimulationConfig bench_config(int nx, int ny, int nz) {
  nscr::SimulationConfig cfg;
  cfg.grid = nscr::Grid(nx, ny, nz);
  cfg.epsilon = 1e-3;
  return cfg;
}

void BM_Rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nscr::SimulationConfig cfg = bench_config(n, 2 * n, n);
  nscr::Solver solver(cfg);
  const nscr::SpectralField u = nscr::make_initial_data(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(0.0, u));
}
BENCHMARK(BM_Rhs)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const nscr::SimulationConfig cfg = bench_config(n, 2 * n, n);
  nscr::Solver solver(cfg);
  const nscr::SpectralField u = nscr::make_initial_data(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solver.step(u, 0.0, 0.05));
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Multipliers(benchmark::State& state) {
  const nscr::MultiplierParams prm(1e-3);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.37;
    const nscr::Wavevector w{3, 4.5, 2};
    benchmark::DoNotOptimize(nscr::stretching_multiplier(t, w, prm) * nscr::ghost_multiplier(t, w, prm));
  }
}
BENCHMARK(BM_Multipliers);

void BM_EvolveQkMode(benchmark::State& state) {
  const nscr::PhysicsParams prm(1e-2, 2.0);
  const nscr::Wavevector w{1, 2.0, 1};
  const nscr::NonzeroModeState s0 = nscr::make_nonzero_state(w, 0.0, prm, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(nscr::evolve_qk_mode(w, s0, prm, 20.0));
}
BENCHMARK(BM_EvolveQkMode)->Unit(benchmark::kMicrosecond);

void BM_LinfAmplitude(benchmark::State& state) {
  const nscr::ZeroFreqField f = nscr::gaussian_profile(static_cast<int>(state.range(0)), 4, 256.0, 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(nscr::linf_amplitude(f));
}
BENCHMARK(BM_LinfAmplitude)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
