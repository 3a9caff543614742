#include <benchmark/benchmark.h>

#include "hermlag/integration.hpp"
#include "hermlag/laguerre.hpp"

using namespace hermlag;

namespace {

Partition top_partition(int n, int weight) {
    std::vector<int> parts(n, 0);
    parts[0] = weight;
    return Partition(parts);
}

// Polynomial constructors are memoized; decomposition is not.
void BM_SchurDecompose(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto p = schur_eig(top_partition(n, static_cast<int>(state.range(1))), n);
    for (auto _ : state) benchmark::DoNotOptimize(schur_decompose(p));
}
BENCHMARK(BM_SchurDecompose)->Args({2, 4})->Args({3, 4})->Args({4, 4});

void BM_VerifyEigen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto m = top_partition(n, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_eigen(m, Rational(7, 2), n));
}
BENCHMARK(BM_VerifyEigen)->Args({2, 2})->Args({2, 4})->Args({3, 3});

void BM_ExtractRaising(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto m = top_partition(n, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(extract_raising(m, Rational(6), n));
}
BENCHMARK(BM_ExtractRaising)->Args({2, 2})->Args({3, 2});

void BM_ApplyXPlus(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto op = lambda_op(LieElement::x_plus(n), Rational(6));
    const auto f = laguerre_fn(top_partition(n, 3), Rational(6), n).body;
    for (auto _ : state) benchmark::DoNotOptimize(apply(op, f));
}
BENCHMARK(BM_ApplyXPlus)->Arg(1)->Arg(2)->Arg(3);

void BM_InvariantIntegral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto f = [](const std::vector<double>& l) {
        double s = 0;
        for (double x : l) s += x;
        return std::complex<double>(std::exp(-s));
    };
    for (auto _ : state) benchmark::DoNotOptimize(invariant_integral(f, 4.0, n, 24));
}
BENCHMARK(BM_InvariantIntegral)->Arg(1)->Arg(2)->Arg(3);

void BM_LaplaceRankTwo(benchmark::State& state) {
    const auto f = laguerre_fn(Partition({1, 0}), Rational(4), 2).body;
    const CMatrix z = TubePoint::scalar(2, 2.0).matrix();
    const LaplaceTransform L(f, 4.0, z, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(L(z));
}
BENCHMARK(BM_LaplaceRankTwo)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

// the packaged benchmark_main archive carries LTO bytecode from another compiler build
BENCHMARK_MAIN();
