#include <benchmark/benchmark.h>

#include "lrkit/quasilocality.hpp"

using namespace lrkit;

namespace {

MetricGraph chain(int length) {
  std::vector<Site> sites;
  for (int i = 0; i < length; ++i) sites.push_back({i});
  return MetricGraph::from_sites(1, std::move(sites));
}

Observable chain_hamiltonian(const MetricGraph& g, double coupling, double field) {
  Interaction phi = heisenberg_interaction(g, coupling);
  std::vector<OnSiteTerm> onsite;
  for (int s = 0; s < g.size(); ++s) onsite.push_back({s, field * pauli_matrix(3)});
  std::vector<int> lambda(g.size());
  for (int i = 0; i < g.size(); ++i) lambda[i] = i;
  return build_hamiltonian(g, onsite, phi, lambda);
}

void BM_Diagonalize(benchmark::State& state) {
  const int length = int(state.range(0));
  MetricGraph g = chain(length);
  const Observable h = chain_hamiltonian(g, 1.0, 0.5);
  for (auto _ : state) {
    DynamicsEngine e = DynamicsEngine::diagonalize(h);
    benchmark::DoNotOptimize(e.eigenvalues());
  }
  state.SetComplexityN(1 << length);
}
BENCHMARK(BM_Diagonalize)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const int length = int(state.range(0));
  MetricGraph g = chain(length);
  DynamicsEngine e = DynamicsEngine::diagonalize(chain_hamiltonian(g, 1.0, 0.5));
  Observable a = pauli(3, 0);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(e.evolve(a, t).matrix);
  }
}
BENCHMARK(BM_Evolve)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SpectralNorm(benchmark::State& state) {
  const int length = int(state.range(0));
  MetricGraph g = chain(length);
  DynamicsEngine e = DynamicsEngine::diagonalize(chain_hamiltonian(g, 1.0, 0.5));
  const Observable evolved = e.evolve(pauli(3, 0), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(evolved));
}
BENCHMARK(BM_SpectralNorm)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CommutatorGrid(benchmark::State& state) {
  const int length = 8;
  MetricGraph g = chain(length);
  DynamicsEngine e = DynamicsEngine::diagonalize(chain_hamiltonian(g, 1.0, 0.5));
  Observable a = pauli(3, 0);
  Observable b = pauli(3, length - 1);
  std::vector<double> times;
  for (int i = 0; i < 16; ++i) times.push_back(0.1 * i);
  const unsigned threads = unsigned(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(e.commutator_norm_grid(a, b, times, threads));
}
BENCHMARK(BM_CommutatorGrid)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LatticeFNorm(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(lattice_f_norm(int(state.range(0)), state.range(0) == 1 ? 1.0 : 0.5));
}
BENCHMARK(BM_LatticeFNorm)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_InteractionNorm(benchmark::State& state) {
  MetricGraph g = MetricGraph::box(1, int(state.range(0)));
  Interaction phi = heisenberg_interaction(g, 1.0);
  DecayFunction f(1, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(interaction_norm(phi, f, g));
}
BENCHMARK(BM_InteractionNorm)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
