#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "hopfwave/eigenproblem.hpp"
#include "hopfwave/operators.hpp"
#include "hopfwave/orbit_solver.hpp"
#include "hopfwave/timedomain.hpp"

using namespace hopfwave;

namespace {

ProblemSpec damped() {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("-u1^3/6 - u2 - u3");
  return s;
}

FourierField sample_field(int N, std::size_t M) {
  FourierField v(N, M);
  for (int k = 0; k <= N; ++k)
    for (std::size_t m = 0; m <= M; ++m) {
      const double x = static_cast<double>(m) / M;
      v(0, k, m) = cplx(std::cos(3 * x + k), k ? std::sin(x * k) : 0.0) / (1.0 + k);
      v(1, k, m) = cplx(std::sin(2 * x - k), k ? std::cos(x + k) : 0.0) / (1.0 + k);
    }
  return v;
}

void BM_ApplyB(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  const OrbitOperators ops(damped(), 0.0, N, 64);
  const FourierField v = sample_field(N, 64);
  for (auto _ : st) benchmark::DoNotOptimize(ops.apply_B(v, 1.0, 1.57));
}
BENCHMARK(BM_ApplyB)->Arg(4)->Arg(8)->Arg(16);

void BM_FixedPointResidual(benchmark::State& st) {
  const OrbitOperators ops(damped(), 0.0, 8, static_cast<std::size_t>(st.range(0)));
  const FourierField v = sample_field(8, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(ops.fixed_point_residual(v, 1.0, 1.57));
}
BENCHMARK(BM_FixedPointResidual)->Arg(32)->Arg(64)->Arg(128);

void BM_ShootEvp(benchmark::State& st) {
  const auto lin = linearize(damped(), 0.0, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(shoot_evp(cplx(0.0, 1.0), 1.57, lin));
}
BENCHMARK(BM_ShootEvp)->Arg(128)->Arg(256)->Arg(512);

void BM_SimulatorStep(benchmark::State& st) {
  SimOptions o;
  o.M = static_cast<std::size_t>(st.range(0));
  const Simulator sim(damped(), 1.57, o);
  std::vector<double> v(o.M + 1);
  for (std::size_t m = 0; m <= o.M; ++m) v[m] = 0.1 * std::sin(0.5 * std::numbers::pi * m / o.M);
  SimState s = sim.initial(v, v);
  for (auto _ : st) sim.step(s);
}
BENCHMARK(BM_SimulatorStep)->Arg(200)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
