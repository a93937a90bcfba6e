#include <benchmark/benchmark.h>

#include "berscan/discreteness.hpp"
#include "berscan/holonomy.hpp"
#include "berscan/scan.hpp"

namespace {

const berscan::QcFamily& family() {
    static const berscan::QcFamily fam;
    return fam;
}

void BM_WpPair(benchmark::State& state) {
    const auto& lat = family().lattice();
    berscan::Complex z{0.31, 0.22};
    for (auto _ : state) {
        auto p = lat.wp_pair(z);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_WpPair);

void BM_Holonomy(benchmark::State& state) {
    const berscan::SlicePoint p{berscan::Complex{2.5, 1.5}};
    for (auto _ : state) {
        auto h = berscan::holonomy(family(), p);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_Holonomy);

void BM_BqFuchsian(benchmark::State& state) {
    const berscan::CharacterTriple t{3.0, 3.0, 3.0};
    for (auto _ : state) {
        auto v = berscan::bq_test(t);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_BqFuchsian);

void BM_ClassifyPoint(benchmark::State& state) {
    berscan::RasterConfig cfg;
    cfg.resolution = 64;
    for (auto _ : state) {
        auto pc = berscan::classify_point(
            family(), berscan::Complex{1.2, 0.9}, cfg);
        benchmark::DoNotOptimize(pc);
    }
}
BENCHMARK(BM_ClassifyPoint);

void BM_SmallRaster(benchmark::State& state) {
    berscan::RasterConfig cfg;
    cfg.resolution = static_cast<int>(state.range(0));
    cfg.width = 20.0;
    cfg.height = 20.0;
    cfg.workers = 1;
    for (auto _ : state) {
        auto img = berscan::raster(family(), cfg);
        benchmark::DoNotOptimize(img);
    }
}
BENCHMARK(BM_SmallRaster)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
