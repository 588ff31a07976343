#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hlip/approx.hpp"
#include "hlip/generators.hpp"
#include "hlip/optimize.hpp"
#include "hlip/surface.hpp"

using namespace hlip;

namespace {

std::vector<HPoint> random_points(std::size_t count) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<HPoint> pts(count, HPoint::zero(2));
    for (HPoint& p : pts) {
        for (int k = 0; k < 2; ++k) {
            p.x[k] = u(rng);
            p.y[k] = u(rng);
        }
        p.t = u(rng);
    }
    return pts;
}

void BM_GroupMul(benchmark::State& state) {
    const auto pts = random_points(1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pts[i & 1023] * pts[(i + 7) & 1023]);
        ++i;
    }
}
BENCHMARK(BM_GroupMul);

void BM_BoxNorm(benchmark::State& state) {
    const auto pts = random_points(1024);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(box_norm(pts[i++ & 1023]));
}
BENCHMARK(BM_BoxNorm);

void BM_IntrinsicGradient(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const GridFunction phi = random_smooth_graph(GridSpec::centered_box(2, 1.0, 1.0, h), 3, 0.2);
    for (auto _ : state) benchmark::DoNotOptimize(intrinsic_gradient(phi));
    state.counters["nodes"] = static_cast<double>(phi.size());
}
BENCHMARK(BM_IntrinsicGradient)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EnergyGradient(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const GridSpec g = GridSpec::centered_box(2, 1.0 + 2.0 * h, 1.0 + 2.0 * h, h);
    const GridFunction phi = random_smooth_graph(g, 5, 0.2);
    const CellMask d1 = disk_mask(g, WPoint::zero(2), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(phi, d1));
}
BENCHMARK(BM_EnergyGradient)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExcessCloud(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const BoundaryCloud cloud = linear_cloud(GridSpec::centered_box(2, 1.0, 1.0, h), 0.5);
    const CloudIndex index = CloudIndex::build(cloud);
    for (auto _ : state) benchmark::DoNotOptimize(excess_cloud(index, HPoint::zero(2), 0.5));
    state.counters["samples"] = static_cast<double>(cloud.size());
}
BENCHMARK(BM_ExcessCloud)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LipschitzApproximation(benchmark::State& state) {
    const GridSpec g = pipeline_grid(2, 4.0 / 3.0, 0.25);
    const BoundaryCloud cloud = linear_cloud(g, 0.05);
    const CloudIndex index = CloudIndex::build(cloud);
    PipelineConfig c;
    c.lip_pairs = 20000;
    for (auto _ : state) benchmark::DoNotOptimize(lipschitz_approximation(index, g, c));
}
BENCHMARK(BM_LipschitzApproximation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
