#include <benchmark/benchmark.h>

#include "pea/fft.hpp"
#include "pea/integrator.hpp"
#include "pea/model.hpp"
#include "pea/norms.hpp"
#include "pea/random_fields.hpp"
#include "pea/spectral_ops.hpp"

namespace {

pea::StateVector bench_state(int n) {
  const pea::Grid g = pea::Grid::make(n, n, n);
  const pea::Domain d;
  pea::Rng rng(17);
  return pea::random_state(g, d, rng, 0.5);
}

void BM_fft_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pea::StateVector u = bench_state(n);
  for (auto _ : state) {
    pea::PhysicalField p = pea::transform_inverse(u.v1);
    pea::ScalarField back = pea::transform_forward(p);
    benchmark::DoNotOptimize(back.c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(u.v1.c.size()));
}

void BM_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pea::StateVector u = bench_state(n);
  pea::PhysicalParams params;
  const pea::ForcingSpec g = pea::ForcingSpec::standard(u.grid(), u.domain(), 0.25);
  for (auto _ : state) {
    pea::Tendency r = pea::rhs(u, params, g);
    benchmark::DoNotOptimize(r.du.v1.c.data());
  }
}

void BM_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pea::StateVector u = bench_state(n);
  pea::PhysicalParams params;
  const pea::ForcingSpec g = pea::ForcingSpec::standard(u.grid(), u.domain(), 0.25);
  pea::IntegratorConfig cfg;
  cfg.dt = 0.01;
  for (auto _ : state) {
    pea::StateVector next = pea::step(u, params, g, cfg.dt, cfg);
    benchmark::DoNotOptimize(next.v1.c.data());
  }
}

void BM_projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pea::StateVector u = bench_state(n);
  for (auto _ : state) {
    pea::StateVector p = pea::project_state_symmetries(u);
    benchmark::DoNotOptimize(p.v1.c.data());
  }
}

void BM_norms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pea::StateVector u = bench_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pea::norm(u, pea::Space::W1));
    benchmark::DoNotOptimize(pea::norm(u, pea::Space::W2));
  }
}

}  // namespace

BENCHMARK(BM_fft_roundtrip)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_rhs)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_step)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_projection)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_norms)->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
