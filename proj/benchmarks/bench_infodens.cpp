#include <benchmark/benchmark.h>

#include "infodens/density.hpp"
#include "infodens/ica.hpp"
#include "infodens/measures.hpp"
#include "infodens/transforms.hpp"

using namespace infodens;

namespace {

void bm_entropy_smooth(benchmark::State& state) {
    Density d = make_density("norm:0,1");
    for (auto _ : state) benchmark::DoNotOptimize(entropy(d));
}
BENCHMARK(bm_entropy_smooth);

void bm_entropy_heavy_tail(benchmark::State& state) {
    Density d = make_density("lognorm:0,1");
    for (auto _ : state) benchmark::DoNotOptimize(entropy(d));
}
BENCHMARK(bm_entropy_heavy_tail);

void bm_fisher_kinked(benchmark::State& state) {
    Density d = make_density("laplace:1");
    for (auto _ : state) benchmark::DoNotOptimize(fisher_info(d));
}
BENCHMARK(bm_fisher_kinked);

void bm_full_report(benchmark::State& state) {
    Density d = make_density("gmm:0,4,1,2,0.4");
    for (auto _ : state) benchmark::DoNotOptimize(report(d));
}
BENCHMARK(bm_full_report);

void bm_pdq(benchmark::State& state) {
    Density d = make_density("lognorm:0,1");
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pdq(d, grid));
}
BENCHMARK(bm_pdq)->Arg(512)->Arg(4096);

void bm_f_tilde(benchmark::State& state) {
    Density d = make_density("laplace:1");
    for (auto _ : state) benchmark::DoNotOptimize(f_tilde(d, 1024));
}
BENCHMARK(bm_f_tilde);

void bm_convolve(benchmark::State& state) {
    Density u = make_density("unif:0,1");
    for (auto _ : state) benchmark::DoNotOptimize(convolve(u, u, 1024));
}
BENCHMARK(bm_convolve);

void bm_whiten(benchmark::State& state) {
    std::vector<Density> sources = {make_density("unif:0,1"), make_density("laplace:1")};
    MixtureSim sim = simulate_mixture(sources, nullptr, static_cast<int>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(whiten(sim.X));
}
BENCHMARK(bm_whiten)->Arg(10000)->Arg(100000);

void bm_pursuit(benchmark::State& state) {
    std::vector<Density> sources = {make_density("unif:0,1"), make_density("laplace:1")};
    MixtureSim sim = simulate_mixture(sources, nullptr, static_cast<int>(state.range(0)), 5);
    WhiteningResult w = whiten(sim.X);
    ProjectionIndex idx = ProjectionIndex::from_name("kappa4_sq");
    for (auto _ : state)
        benchmark::DoNotOptimize(fixed_point_pursuit(w.Z, w.W, idx, 2, 42));
}
BENCHMARK(bm_pursuit)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
