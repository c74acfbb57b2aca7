#include "posedict/classify.hpp"
#include "posedict/solvers.hpp"
#include "posedict/synth.hpp"
#include "posedict/synthetic_head.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

using namespace posedict;

namespace {

Dictionary gaussian_dictionary(int dim, int classes, int per_class, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n;
    std::vector<LabeledSample> samples;
    for (int k = 0; k < classes; ++k)
        for (int m = 0; m < per_class; ++m) {
            Eigen::VectorXd v(dim);
            for (auto& x : v)
                x = n(gen);
            samples.push_back({Sample(v), "c" + std::to_string(100 + k)});
        }
    return build_dictionary(samples);
}

Sample gaussian_query(int dim, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n;
    Eigen::VectorXd v(dim);
    for (auto& x : v)
        x = n(gen);
    return Sample(v);
}

// ORL-sized problem: 32x32 images, 40 classes, theta = 2.
constexpr int kDim = 1024;
constexpr int kClasses = 40;

void BM_SolveCrc(benchmark::State& state)
{
    const auto d = gaussian_dictionary(kDim, kClasses, static_cast<int>(state.range(0)), 1);
    const RepresentationSolver solver(d);
    const auto y = gaussian_query(kDim, 2);
    const Eigen::VectorXd xty = solver.correlate(y.values());
    std::vector<Eigen::Index> all(static_cast<std::size_t>(d.size()));
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    for (auto _ : state)
        benchmark::DoNotOptimize(solver.crc(all, y.values(), xty, CrcConfig{}));
}
BENCHMARK(BM_SolveCrc)->Arg(2)->Arg(12);

void BM_SolveSrc(benchmark::State& state)
{
    const auto d = gaussian_dictionary(kDim, kClasses, static_cast<int>(state.range(0)), 3);
    const auto y = gaussian_query(kDim, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_src(d, y, SrcConfig{}));
}
BENCHMARK(BM_SolveSrc)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Elimination(benchmark::State& state)
{
    const auto d = gaussian_dictionary(kDim, kClasses, 12, 5);
    const RepresentationSolver solver(d);
    const auto y = gaussian_query(kDim, 6);
    EliminationConfig cfg;
    cfg.proportion = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_with_elimination(solver, y, cfg));
}
BENCHMARK(BM_Elimination)->Arg(0)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_Render(benchmark::State& state)
{
    const auto cloud = synthetic_head(1, 2);
    const auto cam = Camera::framing(cloud, {128, 128});
    for (auto _ : state)
        benchmark::DoNotOptimize(render(cloud, rotated_about(cam, rotation_y(12), cloud.centroid())));
    state.SetItemsProcessed(state.iterations() * cloud.size());
}
BENCHMARK(BM_Render)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
