#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>
#include <random>

#include "loadcast/forest.hpp"
#include "loadcast/gbt.hpp"
#include "loadcast/readings.hpp"
#include "loadcast/synthetic.hpp"
#include "loadcast/tree.hpp"

using namespace loadcast;

namespace {

struct Data {
    FeatureMatrix x;
    std::vector<double> y;
};

// Shaped like daily calendar features: 10 columns of repeating integers.
Data calendar_like(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 5.0);
    Data d{FeatureMatrix(n, 10), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double day = static_cast<double>(i);
        const double cols[10] = {2015.0 + std::floor(day / 365), std::fmod(day / 30.4, 12) + 1, std::fmod(day / 7, 53),
                                 std::fmod(day, 365) + 1,        std::fmod(day, 30) + 1,         std::fmod(day, 7),
                                 0,                               0,                               std::fmod(day / 91, 4),
                                 std::fmod(day, 7) >= 5 ? 1.0 : 0.0};
        for (std::size_t j = 0; j < 10; ++j) d.x(i, j) = cols[j];
        d.y.push_back(300 + 100 * std::sin(day / 58.0) + (cols[9] > 0 ? -60 : 0) + noise(rng));
    }
    return d;
}

void BM_BestSplit(benchmark::State& state) {
    const auto d = calendar_like(static_cast<std::size_t>(state.range(0)));
    std::vector<std::size_t> rows(d.y.size()), feats(10);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(feats.begin(), feats.end(), std::size_t{0});
    for (auto _ : state) benchmark::DoNotOptimize(best_split(d.x, d.y, rows, feats));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BestSplit)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_FitTree(benchmark::State& state) {
    const auto d = calendar_like(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_tree(d.x, d.y, TreeConfig{}));
}
BENCHMARK(BM_FitTree)->Arg(292)->Arg(7008);

void BM_FitForest(benchmark::State& state) {
    const auto d = calendar_like(static_cast<std::size_t>(state.range(0)));
    ForestConfig cfg;
    cfg.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(fit_forest(d.x, d.y, cfg));
}
BENCHMARK(BM_FitForest)->Args({292, 1})->Args({292, 0})->Args({7008, 0})->Unit(benchmark::kMillisecond);

void BM_FitGbt(benchmark::State& state) {
    const auto d = calendar_like(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_gbt(d.x, d.y, GbtConfig{}));
}
BENCHMARK(BM_FitGbt)->Arg(292)->Arg(7008)->Unit(benchmark::kMillisecond);

void BM_ParseReadings(benchmark::State& state) {
    SyntheticSpec spec;
    spec.days = static_cast<int>(state.range(0));
    const auto text = generate_synthetic(spec);
    for (auto _ : state) benchmark::DoNotOptimize(parse_readings(text));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseReadings)->Arg(7)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
