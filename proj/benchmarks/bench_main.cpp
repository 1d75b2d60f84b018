// Micro-benchmarks for the hot paths: series evaluation, operator assembly,
// eigenvalue extraction, the discrete transformation, and the flow oracle.

#include <benchmark/benchmark.h>

#include "pdm/catalog.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/flow.hpp"
#include "pdm/grid.hpp"
#include "pdm/operators.hpp"
#include "pdm/transform.hpp"

namespace {

const pdm::ExampleConfig& cfg() {
  static const pdm::ExampleConfig c = pdm::deep_well_config();
  return c;
}

void BM_SeriesG(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const pdm::ScalarField g = pdm::generator_for_mass(cfg().alpha, cfg().beta);
  const pdm::ScalarField G = pdm::series_G(g, K, 1e-10);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G(x));
    x = x < 1.0 ? x + 0.1 : -3.0;
  }
}
BENCHMARK(BM_SeriesG)->Arg(24)->Arg(128);

void BM_SeriesDisplacement(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const pdm::ScalarField g = pdm::generator_for_mass(cfg().alpha, cfg().beta);
  const pdm::ScalarField f = pdm::series_f(g, K, 1e-10);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(x));
    x = x < 1.0 ? x + 0.1 : -3.0;
  }
}
BENCHMARK(BM_SeriesDisplacement)->Arg(24)->Arg(128);

void BM_TransformedPotentialEval(benchmark::State& state) {
  const pdm::ScalarField g = pdm::generator_for_mass(cfg().alpha, cfg().beta);
  const pdm::ScalarField v = pdm::potential_family(cfg());
  const pdm::TransformedPotential tp = pdm::transformed_potential(
      v, g, 24, 1e-10, pdm::CorrectionConvention::kStandard);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tp.W(x));
    x = x < 1.0 ? x + 0.1 : -3.0;
  }
}
BENCHMARK(BM_TransformedPotentialEval);

void BM_HamiltonianAssembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pdm::ScalarField m = pdm::mass_family(cfg().alpha, cfg().beta);
  const pdm::ScalarField v = pdm::potential_family(cfg());
  const pdm::GridSpec grid(-6.0, 5.0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdm::hamiltonian_bdd(m, v, grid));
  }
}
BENCHMARK(BM_HamiltonianAssembly)->Arg(500)->Arg(2000);

void BM_LowestEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pdm::ScalarField v = pdm::quadratic_field(0.5);
  const pdm::GridSpec grid(-12.0, 12.0, n);
  const pdm::TridiagonalOperator op = pdm::hamiltonian_constant(v, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdm::lowest_eigenvalues(op, 4));
  }
}
BENCHMARK(BM_LowestEigenvalues)->Arg(500)->Arg(2000);

void BM_DiscreteT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pdm::ScalarField g = pdm::generator_for_mass(cfg().alpha, cfg().beta);
  const pdm::GridSpec grid = pdm::resolution_grid(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdm::discrete_T(g, grid, 2 * n));
  }
}
BENCHMARK(BM_DiscreteT)->Arg(128)->Arg(256);

void BM_FlowMap(benchmark::State& state) {
  const pdm::ScalarField g = pdm::generator_for_mass(cfg().alpha, cfg().beta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pdm::flow_map(g, -3.0, pdm::FlowDirection::kForward));
  }
}
BENCHMARK(BM_FlowMap);

}  // namespace

BENCHMARK_MAIN();
