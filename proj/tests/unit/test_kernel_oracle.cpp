#include <fks/kernel_oracle.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace fks;
using fks::testing::max_abs;
using fks::testing::max_abs_diff;

namespace {

double rel_error(const PhysicalField& u, double alpha, const KernelQuadratureConfig& cfg = {}) {
    const auto exact = to_physical(frac_deriv(to_spectral(u), alpha));
    return max_abs_diff(lambda_kernel(u, alpha, cfg), exact) / max_abs(exact);
}

} // namespace

TEST(KernelConstant, KnownValues) {
    EXPECT_NEAR(kernel_constant(1.0), 1.0 / std::numbers::pi, 1e-15);
    // alpha = 0.5: Gamma(1.5) cos(pi/4) / pi
    EXPECT_NEAR(kernel_constant(0.5), std::tgamma(1.5) * std::cos(std::numbers::pi / 4) / std::numbers::pi,
                1e-15);
    // Standard form alpha 2^{alpha-1} Gamma((1+alpha)/2) / (sqrt(pi) Gamma(1-alpha/2)).
    for (double a : {0.3, 0.7, 1.2, 1.5, 1.9}) {
        const double other = a * std::pow(2.0, a - 1.0) * std::tgamma((1 + a) / 2) /
                             (std::sqrt(std::numbers::pi) * std::tgamma(1 - a / 2));
        EXPECT_NEAR(kernel_constant(a), other, 1e-13 * other) << a;
    }
}

TEST(LambdaKernel, AlphaOneCos) {
    const Grid g(64);
    const auto u = PhysicalField::sample(g, [](double x) { return std::cos(x); });
    KernelQuadratureConfig cfg;
    cfg.n_images = 64;
    cfg.quad_points = 4096;
    EXPECT_LT(rel_error(u, 1.0, cfg), 1e-4);
}

TEST(LambdaKernel, HalfOrderCosFour) {
    const Grid g(64);
    const auto u = PhysicalField::sample(g, [](double x) { return std::cos(4 * x); });
    const auto out = lambda_kernel(u, 0.5);
    for (int j = 0; j < g.n(); ++j) EXPECT_NEAR(out[j], 2.0 * std::cos(4 * g.node(j)), 1e-5);
}

TEST(LambdaKernel, ZeroIsExactlyZero) {
    const Grid g(32);
    for (double a : {0.3, 1.0, 1.5}) {
        const auto out = lambda_kernel(PhysicalField(g), a);
        for (double v : out.values()) EXPECT_EQ(v, 0.0);
    }
}

TEST(LambdaKernel, RejectsDegenerateOrders) {
    const Grid g(32);
    const PhysicalField u(g);
    EXPECT_THROW((void)lambda_kernel(u, 0.0), std::invalid_argument);
    EXPECT_THROW((void)lambda_kernel(u, 2.0), std::invalid_argument);
    EXPECT_THROW((void)lambda_kernel(u, -1.0), std::invalid_argument);
    KernelQuadratureConfig odd;
    odd.quad_points = 1001;
    EXPECT_THROW((void)lambda_kernel(u, 1.0, odd), std::invalid_argument);
}

TEST(LambdaKernel, ConvergesWithQuadPoints) {
    const Grid g(64);
    const auto u = PhysicalField::sample(g, [](double x) { return std::cos(3 * x) + 0.5 * std::sin(5 * x); });
    for (double a : {0.5, 1.5}) {
        double prev = 1e300;
        for (int q : {256, 512, 1024, 2048}) {
            KernelQuadratureConfig cfg;
            cfg.quad_points = q;
            const double err = rel_error(u, a, cfg);
            EXPECT_LE(err, prev * 1.05) << "alpha " << a << " q " << q;
            prev = err;
        }
    }
}

TEST(LambdaKernel, Linearity) {
    const Grid g(64);
    std::mt19937_64 rng(5);
    const auto a = to_physical(fks::testing::random_field(g, rng, 8));
    const auto b = to_physical(fks::testing::random_field(g, rng, 8));
    PhysicalField combo(g);
    for (int j = 0; j < g.n(); ++j) combo[j] = 2.0 * a[j] - 0.5 * b[j];
    const auto la = lambda_kernel(a, 0.7);
    const auto lb = lambda_kernel(b, 0.7);
    const auto lc = lambda_kernel(combo, 0.7);
    for (int j = 0; j < g.n(); ++j) EXPECT_NEAR(lc[j], 2.0 * la[j] - 0.5 * lb[j], 1e-10);
}

TEST(LambdaKernel, EvenInputGivesEvenOutput) {
    const Grid g(64);
    const auto u = PhysicalField::sample(g, [](double x) { return std::cos(2 * x) + 0.3 * std::cos(7 * x); });
    const auto out = lambda_kernel(u, 1.3);
    for (int j = 1; j < g.n(); ++j) EXPECT_NEAR(out[j], out[g.n() - j], 1e-9);
}

TEST(LambdaKernel, ExclusionFallbackIsReasonable) {
    const Grid g(64);
    const auto u = PhysicalField::sample(g, [](double x) { return std::cos(2 * x); });
    KernelQuadratureConfig cfg;
    cfg.symmetric_pairing = false;
    cfg.inner_exclusion = 1e-3;
    EXPECT_LT(rel_error(u, 0.5, cfg), 1e-2);
}

TEST(OracleCheck, StandardBatteryPasses) {
    for (double a : {0.3, 0.5, 1.0, 1.5}) {
        const auto r = oracle_check(a, 256);
        EXPECT_EQ(r.cases, 9);
        EXPECT_LT(r.max_rel_error, 1e-3) << a;
    }
}
