#include <fks/dynamics.hpp>
#include <fks/fft.hpp>
#include <fks/kernel_oracle.hpp>
#include <fks/timestepper.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace fks;

namespace {

SpectralField smooth_field(const Grid& g) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField f(g);
    for (int xi = 1; xi <= g.dealias_cutoff(); ++xi) f.set(xi, Complex(u(rng), u(rng)) * std::exp(-0.05 * xi));
    return f;
}

void BM_FftRoundTrip(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto fft = RealFft::of_size(n);
    std::vector<double> x(static_cast<size_t>(n));
    std::vector<Complex> c(static_cast<size_t>(n / 2 + 1));
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = std::sin(3.0 * j);
    for (auto _ : state) {
        fft->forward(x, c);
        fft->inverse(c, x);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(4)->Range(256, 16384);

void BM_Rhs(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)));
    RhsEvaluator ev(ModelParams::fractional(0.01, 1.0, 1.0), g);
    const auto u = smooth_field(g);
    std::vector<Complex> out(static_cast<size_t>(g.modes()));
    for (auto _ : state) {
        ev.full(u.half(), out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Rhs)->RangeMultiplier(4)->Range(256, 16384);

void BM_AdaptiveErkStep(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)));
    const auto p = ModelParams::fractional(0.01, 1.0, 1.0);
    StepperConfig cfg;
    AdaptiveErkStepper st(p, g, cfg);
    IntegrationState s{0.0, 1e-3 * smooth_field(g), 1e-4, 0, 0};
    for (auto _ : state) {
        st.step(s);
        benchmark::DoNotOptimize(s.t);
    }
}
BENCHMARK(BM_AdaptiveErkStep)->Arg(1024)->Arg(4096);

void BM_Etdrk4Step(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)));
    const auto p = ModelParams::fractional(0.01, 1.0, 1.0);
    StepperConfig cfg;
    cfg.method = StepMethod::ETDRK4;
    cfg.dt_fixed = 1e-4;
    Etdrk4Stepper st(p, g, cfg);
    IntegrationState s{0.0, 1e-3 * smooth_field(g), cfg.dt_fixed, 0, 0};
    for (auto _ : state) {
        st.step(s);
        benchmark::DoNotOptimize(s.t);
    }
}
BENCHMARK(BM_Etdrk4Step)->Arg(1024)->Arg(4096)->Arg(8192);

void BM_LambdaKernel(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)));
    const auto u = to_physical(smooth_field(g));
    for (auto _ : state) {
        auto out = lambda_kernel(u, 0.5);
        benchmark::DoNotOptimize(out.values().data());
    }
}
BENCHMARK(BM_LambdaKernel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
