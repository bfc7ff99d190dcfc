#include <benchmark/benchmark.h>

#include <random>

#include "nbdyn/classify.hpp"
#include "nbdyn/flag_complex.hpp"
#include "nbdyn/homology.hpp"
#include "nbdyn/params.hpp"
#include "nbdyn/pipeline.hpp"
#include "nbdyn/simdyn.hpp"
#include "nbdyn/spectral.hpp"

namespace {

using namespace nbdyn;

// Dense-ish neighbourhood-sized graph, the typical input of the parameters.
Digraph neighbourhood_like(std::size_t n) { return erdos_renyi(n, 0.3, 17); }

void BM_FlagComplex(benchmark::State& state) {
  const Digraph g = neighbourhood_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_simplices(g, 6));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlagComplex)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_FlagComplexParallel(benchmark::State& state) {
  const Digraph g = neighbourhood_like(128);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_flag_complex(g, 6, threads));
}
BENCHMARK(BM_FlagComplexParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_Betti(benchmark::State& state) {
  const Digraph g = neighbourhood_like(static_cast<std::size_t>(state.range(0)));
  const auto x = build_flag_complex(g, 5);
  for (auto _ : state) benchmark::DoNotOptimize(betti_numbers(x, 4));
}
BENCHMARK(BM_Betti)->RangeMultiplier(2)->Range(16, 64);

void BM_AdjacencySpectrum(benchmark::State& state) {
  const Digraph g = neighbourhood_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adjacency_spectrum(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AdjacencySpectrum)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_ChungSummary(benchmark::State& state) {
  const Digraph g = neighbourhood_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chung_laplacian_summary(g));
}
BENCHMARK(BM_ChungSummary)->RangeMultiplier(2)->Range(16, 256);

void BM_SelectionScores(benchmark::State& state) {
  const Digraph g = erdos_renyi(1000, 0.01, 3);
  const auto code = parse_parameter_code("tcc");
  for (auto _ : state) benchmark::DoNotOptimize(neighbourhood_values(g, code));
}
BENCHMARK(BM_SelectionScores)->Unit(benchmark::kMillisecond);

void BM_Featurise(benchmark::State& state) {
  const Digraph g = erdos_renyi(1000, 0.01, 3);
  StimulusProtocol p;
  p.repeats = 2;
  p.receptors = random_receptors(1000, p.n_classes, kDefaultReceptorCount, 4);
  const auto dynamics = simulate(g, p, LifConfig::for_graph(g), 5);
  const auto sel = select_neighbourhoods(g, parse_parameter_code("size"), 50, SelectionEnd::top);
  const auto feature = parse_parameter_code(state.range(0) == 0 ? "size" : "ec");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        featurise_all(dynamics, sel.neighbourhoods, BinSpec::simulator_default(), feature));
  }
}
BENCHMARK(BM_Featurise)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TrainSvm(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset ds;
  const auto rows = static_cast<std::size_t>(state.range(0));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto label = static_cast<Label>(r % 8);
    std::vector<double> x(100);
    for (std::size_t f = 0; f < x.size(); ++f) x[f] = noise(rng) + (f % 8 == r % 8 ? 1.0 : 0.0);
    ds.features.push_back(std::move(x));
    ds.labels.push_back(label);
  }
  for (auto _ : state) benchmark::DoNotOptimize(train_svm(ds));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TrainSvm)->RangeMultiplier(2)->Range(120, 960)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
