#include <benchmark/benchmark.h>

#include <gaugelab/hypotest.hpp>
#include <gaugelab/presets.hpp>
#include <gaugelab/symmetry.hpp>
#include <gaugelab/thermo.hpp>

#include <random>

using namespace gaugelab;

namespace {

SymmetrySpec su2() {
  return SymmetrySpec::lie(2, {0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()});
}

void bm_tensor_power(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix z = pauli_z();
  for (auto _ : state) benchmark::DoNotOptimize(tensor_power(z, n));
}

void bm_expm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  HermitianOp a = random_hermitian(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}

void bm_partial_trace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  Matrix a = random_hermitian(1 << n, rng).mat();
  std::vector<int> keep;
  for (int i = 1; i <= n / 2; ++i) keep.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(a, keep, chain(n), 2));
}

void bm_decompose_charges(benchmark::State& state) {
  SymmetrySpec spec = SymmetrySpec::abelian({1, -1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(spec, n));
}

void bm_decompose_spin(benchmark::State& state) {
  SymmetrySpec spec = su2();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(spec, n));
}

void bm_gauge_average_spin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SymmetrySpec spec = su2();
  std::mt19937_64 rng(3);
  Matrix a = random_hermitian(1 << n, rng).mat();
  for (auto _ : state) benchmark::DoNotOptimize(gauge_average(a, spec, n));
}

void bm_gibbs_chain(benchmark::State& state) {
  Interaction phi = preset_interaction("gauge_ising", 1.0, 1.0, 0.5);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gibbs_field(phi.hamiltonian(chain(n))));
}

void bm_beta_knapsack(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix h = normalize_generator(pauli_z());
  FieldDensity psi = product_state(h, n);
  for (auto _ : state) benchmark::DoNotOptimize(beta_epsilon_commuting(psi, psi, 0.1));
}

}  // namespace

BENCHMARK(bm_tensor_power)->Arg(6)->Arg(9);
BENCHMARK(bm_expm)->Arg(64)->Arg(256);
BENCHMARK(bm_partial_trace)->Arg(8)->Arg(10);
BENCHMARK(bm_decompose_charges)->Arg(8)->Arg(12);
BENCHMARK(bm_decompose_spin)->Arg(4)->Arg(6);
BENCHMARK(bm_gauge_average_spin)->Arg(4)->Arg(6);
BENCHMARK(bm_gibbs_chain)->Arg(6)->Arg(8);
BENCHMARK(bm_beta_knapsack)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
