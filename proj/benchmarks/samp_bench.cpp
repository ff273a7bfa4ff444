// Microbenchmarks for the hot paths: the greedy search itself, the
// straight-line integrator it competes with, metric curves, the blur
// baseline, bridge sampling and exhaustive enumeration. Numbers guide the
// default budgets (step counts, trial counts), they are not regression
// gates.

#include <benchmark/benchmark.h>

#include <vector>

#include "samp/brownian.hpp"
#include "samp/enumeration.hpp"
#include "samp/metrics.hpp"
#include "samp/model.hpp"
#include "samp/path.hpp"
#include "samp/rng.hpp"
#include "samp/samp.hpp"
#include "samp/tensor.hpp"

using namespace samp;

namespace {

Tensor random_image(std::size_t rows, std::size_t cols, Rng& rng) {
    Tensor t = Tensor::zeros({rows, cols});
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform01();
    return t;
}

// One shared scoring fixture per input width; initialised weights are enough
// for timing (training does not change the arithmetic).
const MlpModel& net_for(std::size_t d) {
    static std::vector<std::unique_ptr<MlpModel>> cache;
    for (const auto& m : cache)
        if (m->input_dim() == d) return *m;
    Rng rng(17 + d);
    auto net = std::make_unique<MlpModel>(std::vector<std::size_t>{d, 16, 2},
                                          Activation::Tanh);
    net->init_parameters(rng);
    cache.push_back(std::move(net));
    return *cache.back();
}

void bench_greedy_walk(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    const bool capped = state.range(1) != 0;
    const MlpModel& net = net_for(d);
    Rng rng(4);
    Tensor x = random_image(1, d, rng);
    Tensor zero = Tensor::zeros(x.shape());

    SampConfig sc;  // s=10, lambda=0.5
    if (!capped) {
        sc.eta_ratio.reset();
        sc.momentum = 0.0;
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(samp_attribute(net, 0, zero, x, sc));
    state.SetLabel(capped ? "capped+momentum" : "plain");
}
BENCHMARK(bench_greedy_walk)
    ->Args({64, 0})
    ->Args({64, 1})
    ->Args({256, 0})
    ->Args({256, 1})
    ->Unit(benchmark::kMillisecond);

void bench_straight_line_integrate(benchmark::State& state) {
    const std::size_t steps = static_cast<std::size_t>(state.range(0));
    const MlpModel& net = net_for(256);
    Rng rng(5);
    Tensor x = random_image(16, 16, rng);
    Tensor zero = Tensor::zeros(x.shape());
    for (auto _ : state)
        benchmark::DoNotOptimize(integrated_gradients(net, 0, zero, x, steps));
}
BENCHMARK(bench_straight_line_integrate)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void bench_metric_curve(benchmark::State& state) {
    const MlpModel& net = net_for(256);
    Rng rng(6);
    Tensor x = random_image(16, 16, rng);
    Tensor zero = Tensor::zeros(x.shape());
    SampConfig sc;
    DirectionalResult res = directional_attribute(net, 0, zero, x, sc, true);
    BaselineSpec black = BaselineSpec::black();
    for (auto _ : state)
        benchmark::DoNotOptimize(deletion_insertion(net, 0, x, res.attribution,
                                                    MetricMode::Deletion, 10, black));
}
BENCHMARK(bench_metric_curve)->Unit(benchmark::kMillisecond);

void bench_gaussian_blur(benchmark::State& state) {
    const std::size_t side = static_cast<std::size_t>(state.range(0));
    Rng rng(7);
    Tensor img = random_image(side, side, rng);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_blur(img, 11, 5.0));
}
BENCHMARK(bench_gaussian_blur)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void bench_bridge_sampler(benchmark::State& state) {
    const std::size_t trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_conditional_allocation(5, 1.0, 0.0, trials, 21));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(trials));
}
BENCHMARK(bench_bridge_sampler)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void bench_enumeration(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(d, 1));
}
BENCHMARK(bench_enumeration)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
