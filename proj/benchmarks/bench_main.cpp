#include <benchmark/benchmark.h>

#include <random>

#include "holodyn/flows.hpp"
#include "holodyn/holonomy.hpp"
#include "holodyn/orbit.hpp"
#include "holodyn/presets.hpp"

using namespace holodyn;

namespace {

Jet dense_jet(std::size_t n, int order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet::Terms t;
  for (int d = 0; d <= order; ++d)
    for (const auto& e : monomials_of_degree(n, d)) t.emplace(e, cplx{u(rng), u(rng)});
  return Jet(n, order, std::move(t));
}

JetMap dense_germ(std::size_t n, int order, std::uint64_t seed) {
  std::vector<Jet> c;
  for (std::size_t i = 0; i < n; ++i)
    c.push_back(Jet::variable(n, order, i) + dense_jet(n, order, seed + i).nonlinear_part().scaled(0.1));
  return JetMap(std::move(c));
}

void BM_JetMul(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = dense_jet(2, order, 1), b = dense_jet(2, order, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMul)->Arg(4)->Arg(8)->Arg(16);

void BM_JetMapCompose(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const JetMap f = dense_germ(2, order, 3), g = dense_germ(2, order, 5);
  for (auto _ : state) benchmark::DoNotOptimize(jetmap_compose(f, g));
}
BENCHMARK(BM_JetMapCompose)->Arg(4)->Arg(8);

void BM_HolonomySeriesThmB(benchmark::State& state) {
  const Foliation F = presets::foliation("thmB");
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(holonomy_series(F, order));
}
BENCHMARK(BM_HolonomySeriesThmB)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HolonomyNumericThmB(benchmark::State& state) {
  const auto sys = build_monodromy_system(presets::foliation("thmB"));
  const Point p{cplx{0.03, 0.01}, cplx{-0.02, 0.04}};
  for (auto _ : state) benchmark::DoNotOptimize(holonomy_numeric(sys, p));
}
BENCHMARK(BM_HolonomyNumericThmB)->Unit(benchmark::kMicrosecond);

void BM_FormalFlowExample3(benchmark::State& state) {
  const VectorField X = presets::field("example3");
  for (auto _ : state) benchmark::DoNotOptimize(formal_flow(X, 1.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FormalFlowExample3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_IterateOrbitF(benchmark::State& state) {
  const auto F = presets::map("F");
  const Point p = level_circle_seeds(presets::f_level_constant(), 1).front();
  OrbitOptions o;
  o.budget = static_cast<std::uint64_t>(state.range(0));
  o.keep_points = false;
  o.backward_ok = true;
  for (auto _ : state) benchmark::DoNotOptimize(iterate_orbit(F, p, DomainBall(0.3), o));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_IterateOrbitF)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_ClassifyGridH(benchmark::State& state) {
  const auto H = presets::map("H");
  const auto seeds = lattice_seeds({20, 20}, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_seed_grid(H, DomainBall(0.3), seeds));
}
BENCHMARK(BM_ClassifyGridH)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
