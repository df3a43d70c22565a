#include <benchmark/benchmark.h>

#include "ep/clustering.hpp"
#include "ep/ensemble.hpp"
#include "ep/geometry.hpp"
#include "ep/logreg.hpp"
#include "ep/rng.hpp"
#include "ep/sampling.hpp"
#include "ep/synth.hpp"

namespace {

ep::FeatureMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    ep::Rng rng(seed);
    ep::FeatureMatrix m(n, d);
    for (double& v : m.values) v = rng.uniform_real(-5.0, 5.0);
    return m;
}

void BM_NearestNeighbors(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 64, 1);
    std::size_t query = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ep::nearest_neighbors(query, m, 6));
        query = (query + 1) % m.n_samples;
    }
    state.SetItemsProcessed(state.iterations() * m.n_samples);
}
BENCHMARK(BM_NearestNeighbors)->Arg(500)->Arg(2000);

void BM_AvgPairwiseDistance(benchmark::State& state) {
    const auto m = random_matrix(1000, 64, 2);
    ep::Rng rng(3);
    const auto indices =
        rng.sample_without_replacement(m.n_samples, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(ep::avg_pairwise_distance(indices, m));
}
BENCHMARK(BM_AvgPairwiseDistance)->Arg(10)->Arg(30);

void BM_MaxMinSample(benchmark::State& state) {
    const auto m = random_matrix(500, 64, 4);
    ep::EPParams params;
    params.prototypes = 30;
    params.per_prototype = 6;
    params.hypotheses = 50;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        ep::Rng rng(ep::derive_seed(5, ep::stream::trial(trial++)));
        benchmark::DoNotOptimize(ep::max_min_sample(m, params, rng));
    }
}
BENCHMARK(BM_MaxMinSample);

void BM_LogRegTrain(benchmark::State& state) {
    const ep::Dataset d = ep::make_blobs({.n_classes = 8,
                                          .samples_per_class = 25,
                                          .n_dims = 64,
                                          .center_spread = 10.0,
                                          .within_std = 1.0,
                                          .seed = 6});
    ep::TrainOptions opts;
    opts.max_iters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ep::train(d.features, *d.labels, opts));
}
BENCHMARK(BM_LogRegTrain)->Arg(50)->Arg(500);

void BM_EnsembleFitDesk(benchmark::State& state) {
    const ep::Dataset d = ep::make_blobs({.n_classes = 6,
                                          .samples_per_class = 50,
                                          .n_dims = 64,
                                          .center_spread = 10.0,
                                          .within_std = 1.0,
                                          .seed = 7});
    ep::EPParams params; // desk preset
    params.trials = 50;
    params.prototypes = 10;
    params.per_prototype = 4;
    params.hypotheses = 20;
    params.seed = 8;
    for (auto _ : state)
        benchmark::DoNotOptimize(ep::fit(d, params, {}, 1));
}
BENCHMARK(BM_EnsembleFitDesk)->Unit(benchmark::kMillisecond);

void BM_ProjectAll(benchmark::State& state) {
    const ep::Dataset d = ep::make_blobs({.n_classes = 6,
                                          .samples_per_class = 50,
                                          .n_dims = 64,
                                          .center_spread = 10.0,
                                          .within_std = 1.0,
                                          .seed = 9});
    ep::EPParams params;
    params.trials = 50;
    params.prototypes = 10;
    params.per_prototype = 4;
    params.hypotheses = 20;
    params.seed = 10;
    const ep::EnsembleModel model = ep::fit(d, params, {}, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(ep::project_all(model, d.features, 1));
    state.SetItemsProcessed(state.iterations() * d.n_samples());
}
BENCHMARK(BM_ProjectAll)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
    const ep::Dataset d = ep::make_blobs({.n_classes = 8,
                                          .samples_per_class = 30,
                                          .n_dims = 16,
                                          .center_spread = 3.0,
                                          .within_std = 1.0,
                                          .seed = 11});
    for (auto _ : state)
        benchmark::DoNotOptimize(ep::kmeans(d.features, 8, 100, 2, 12));
    state.SetItemsProcessed(state.iterations() * d.n_samples());
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
