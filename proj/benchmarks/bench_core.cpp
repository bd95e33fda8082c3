// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "tiht/formats.hpp"
#include "tiht/generator.hpp"
#include "tiht/measurements.hpp"
#include "tiht/solvers.hpp"

namespace {

using namespace tiht;

Tensor<Complex> random_complex(const Shape& shape, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Tensor<Complex> x(shape);
    for (auto& v : x.data()) v = Complex(n(rng), n(rng));
    return x;
}

Shape cube(benchmark::State& state) {
    const Index n = state.range(0);
    return Shape{n, n, n};
}

void BM_ModeProduct(benchmark::State& state) {
    const Shape shape = cube(state);
    const auto x = random_complex(shape, 1);
    const Matrix<Complex> a = Matrix<Complex>::Random(shape[1], shape[1]);
    for (auto _ : state) benchmark::DoNotOptimize(mode_product(x, a, 1));
}
BENCHMARK(BM_ModeProduct)->Arg(10)->Arg(30);

void BM_Truncate(benchmark::State& state) {
    const auto format = static_cast<Format>(state.range(1));
    const Shape shape = cube(state);
    const LowRankModel model(format, shape, RankTuple{2});
    const auto x = random_complex(shape, 2);
    for (auto _ : state) benchmark::DoNotOptimize(truncate_dense(x, model));
    state.SetLabel(std::string(to_string(format)));
}
BENCHMARK(BM_Truncate)->ArgsProduct({{10, 30}, {0, 1, 2}});

void BM_FourierApplyAdjoint(benchmark::State& state) {
    const Shape shape = cube(state);
    const FourierEnsemble a(shape, shape.size() / 5, 3);
    const auto x = random_complex(shape, 4);
    for (auto _ : state) benchmark::DoNotOptimize(a.adjoint(a.apply(x)));
}
BENCHMARK(BM_FourierApplyAdjoint)->Arg(10)->Arg(30);

void BM_GaussianApply(benchmark::State& state) {
    const Shape shape = cube(state);
    const GaussianEnsemble<double> a(shape, shape.size() / 5, 5);
    const auto x = generate_low_rank(LowRankModel(Format::Hosvd, shape, RankTuple{2}), 6);
    for (auto _ : state) benchmark::DoNotOptimize(a.apply(x));
}
BENCHMARK(BM_GaussianApply)->Arg(10)->Arg(20);

// One NTIHT iteration on a Fourier problem, by running the solver for a
// single step from a warm start.
void BM_NtihtIteration(benchmark::State& state) {
    const auto subspace = static_cast<StepSubspace>(state.range(1));
    const Shape shape = cube(state);
    const LowRankModel model(Format::Hosvd, shape, RankTuple{2});
    const auto truth = to_complex(generate_low_rank(model, 7));
    const FourierEnsemble a(shape, shape.size() / 4, 8);
    const Vector<Complex> y = a.apply(truth);
    SolverConfig<Complex> cfg{.model = model,
                              .max_iters = 1,
                              .initial = truncate_dense(truth + random_complex(shape, 9), model),
                              .step_subspace = subspace};
    for (auto _ : state) benchmark::DoNotOptimize(tiht_run<Complex>(a, y, cfg));
    state.SetLabel(std::string(to_string(subspace)));
}
BENCHMARK(BM_NtihtIteration)->ArgsProduct({{10, 30}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
