#include <fks/fft.hpp>
#include <fks/spectral.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace fks;
using fks::testing::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Grid, ValidatesSize) {
    EXPECT_THROW(Grid(6), std::invalid_argument);
    EXPECT_THROW(Grid(9), std::invalid_argument);
    EXPECT_THROW(Grid(16, 9), std::invalid_argument);
    EXPECT_THROW(Grid(16, 0), std::invalid_argument);
    const Grid g(16);
    EXPECT_EQ(g.dealias_cutoff(), 5);
    EXPECT_EQ(g.modes(), 9);
    EXPECT_DOUBLE_EQ(g.node(4), kPi / 2);
    EXPECT_EQ(Grid(4096).dealias_cutoff(), 1365);
}

TEST(ToSpectral, CosOnEightPoints) {
    const Grid g(8);
    const auto f = to_spectral(PhysicalField::sample(g, [](double x) { return std::cos(x); }));
    for (int xi = -3; xi <= 4; ++xi) {
        const double expect = std::abs(xi) == 1 ? 0.5 : 0.0;
        EXPECT_NEAR(f.coeff(xi).real(), expect, 1e-14) << xi;
        EXPECT_NEAR(f.coeff(xi).imag(), 0.0, 1e-14) << xi;
    }
}

TEST(ToSpectral, ZeroField) {
    const Grid g(16);
    const auto f = to_spectral(PhysicalField(g));
    for (int xi = 0; xi <= 8; ++xi) EXPECT_EQ(f.coeff(xi), Complex{});
}

TEST(ToSpectral, SinThree) {
    const Grid g(16);
    const auto f = to_spectral(PhysicalField::sample(g, [](double x) { return std::sin(3 * x); }));
    EXPECT_NEAR(std::abs(f.coeff(3) - Complex(0, -0.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f.coeff(-3) - Complex(0, 0.5)), 0.0, 1e-14);
}

TEST(ToSpectral, RejectsNonFiniteNamingIndex) {
    const Grid g(16);
    PhysicalField u(g);
    u[7] = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)to_spectral(u);
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
    }
}

TEST(ToPhysical, SingleModeAndZero) {
    const Grid g(32);
    SpectralField f(g);
    f.set(1, 0.5);
    const auto u = to_physical(f);
    for (int j = 0; j < g.n(); ++j) EXPECT_NEAR(u[j], std::cos(g.node(j)), 1e-15);
    const auto z = to_physical(SpectralField(g));
    for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

TEST(ToPhysical, RejectsBrokenSymmetry) {
    const Grid g(16);
    SpectralField f(g);
    f.set(1, 1.0);
    f.half()[0] = Complex(0.0, 0.5);
    EXPECT_THROW((void)to_physical(f), std::invalid_argument);
}

TEST(ToPhysical, RandomRoundTrip) {
    const Grid g(64);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d;
    PhysicalField u(g);
    for (auto& v : u.values()) v = d(rng);
    const auto back = to_physical(to_spectral(u));
    EXPECT_LE(max_abs_diff(u, back), 1e-12 * fks::testing::max_abs(u));
}

TEST(SpectralField, FromFullChecksSymmetry) {
    const Grid g(8);
    std::vector<Complex> full(8);
    // Index i holds xi = i - 3.
    full[4] = Complex(0.5, 0.25);
    full[2] = Complex(0.5, -0.25);
    const auto f = SpectralField::from_full(g, full);
    EXPECT_EQ(f.coeff(-1), Complex(0.5, -0.25));
    EXPECT_EQ(f.full(), full);
    full[2] = Complex(0.4, 0.0);
    EXPECT_THROW((void)SpectralField::from_full(g, full), std::invalid_argument);
}

TEST(FracDeriv, Examples) {
    const Grid g(32);
    SpectralField c4(g);
    c4.set(4, 0.5);
    EXPECT_NEAR(std::abs(frac_deriv(c4, 0.5).coeff(4) - Complex(1.0)), 0.0, 1e-15);
    SpectralField s2(g);
    s2.set(2, Complex(0, -0.5));
    EXPECT_NEAR(std::abs(frac_deriv(s2, 1.0).coeff(2) - Complex(0, -1.0)), 0.0, 1e-15);
    std::mt19937_64 rng(1);
    const auto r = fks::testing::random_field(g, rng, 10);
    EXPECT_EQ(fks::testing::max_coeff_diff(frac_deriv(r, 0.0), r), 0.0);
    EXPECT_THROW((void)frac_deriv(r, -0.5), std::invalid_argument);
}

TEST(FracDeriv, MeanMultiplier) {
    const Grid g(16);
    SpectralField f(g);
    f.half()[0] = 3.0;
    EXPECT_EQ(frac_deriv(f, 0.0).mean(), 3.0);
    EXPECT_EQ(frac_deriv(f, 0.7).mean(), 0.0);
}

TEST(Hilbert, Examples) {
    const Grid g(32);
    const auto cosx = to_spectral(PhysicalField::sample(g, [](double x) { return std::cos(x); }));
    const auto sinx = to_spectral(PhysicalField::sample(g, [](double x) { return std::sin(x); }));
    EXPECT_LE(fks::testing::max_coeff_diff(hilbert(cosx), sinx), 1e-15);
    EXPECT_LE(fks::testing::max_coeff_diff(hilbert(sinx), -1.0 * cosx), 1e-15);
    SpectralField m(g);
    m.half()[0] = 2.0;
    EXPECT_EQ(hilbert(m).mean(), 0.0);
}

TEST(Derivative, Examples) {
    const Grid g(32);
    const auto s3 = to_spectral(PhysicalField::sample(g, [](double x) { return std::sin(3 * x); }));
    const auto c3 = to_spectral(PhysicalField::sample(g, [](double x) { return 3 * std::cos(3 * x); }));
    EXPECT_LE(fks::testing::max_coeff_diff(derivative(s3, 1), c3), 1e-14);
    const auto c2 = to_spectral(PhysicalField::sample(g, [](double x) { return std::cos(2 * x); }));
    EXPECT_LE(fks::testing::max_coeff_diff(derivative(c2, 2), -4.0 * c2), 1e-13);
    SpectralField ny(g);
    ny.set(16, 1.0);
    EXPECT_EQ(derivative(ny, 1).coeff(16), Complex{});
    EXPECT_EQ(derivative(ny, 2).coeff(16), Complex(-256.0));
    std::mt19937_64 rng(2);
    EXPECT_EQ(derivative(fks::testing::random_field(g, rng, 15), 1).mean(), 0.0);
}

TEST(Dealias, TwoThirdsRule) {
    const Grid g(16);
    SpectralField f(g);
    f.set(5, 1.0);
    f.set(6, 1.0);
    const auto d = dealias(f);
    EXPECT_EQ(d.coeff(5), Complex(1.0));
    EXPECT_EQ(d.coeff(6), Complex{});
    SpectralField low(g);
    low.set(2, Complex(0.1, 0.2));
    EXPECT_EQ(fks::testing::max_coeff_diff(dealias(low), low), 0.0);
}

TEST(Norms, Examples) {
    const Grid g(64);
    const auto cosx = PhysicalField::sample(g, [](double x) { return std::cos(x); });
    const auto sin2 = to_spectral(PhysicalField::sample(g, [](double x) { return std::sin(2 * x); }));
    EXPECT_NEAR(sobolev_norm(to_spectral(cosx), 0.0), std::sqrt(kPi), 1e-14);
    EXPECT_NEAR(sobolev_norm(frac_deriv(sin2, 1.0), 0.0), 2 * std::sqrt(kPi), 1e-13);
    EXPECT_NEAR(sobolev_norm(sin2, 1.0), 2 * std::sqrt(kPi), 1e-13);
    EXPECT_EQ(sobolev_norm(SpectralField(g), 0.0), 0.0);
    EXPECT_NEAR(lp_norm(cosx, std::numeric_limits<double>::infinity()), 1.0, 1e-15);
    EXPECT_NEAR(lp_norm(cosx, 4.0), std::pow(3 * kPi / 4, 0.25), 1e-13);
    EXPECT_NEAR(lp_norm(cosx, 2.0), sobolev_norm(to_spectral(cosx), 0.0), 1e-10);
    EXPECT_THROW((void)lp_norm(cosx, 0.5), std::invalid_argument);
}

TEST(Evaluate, MatchesNodesAndOffGrid) {
    const Grid g(32);
    const auto f = to_spectral(PhysicalField::sample(g, [](double x) { return std::cos(3 * x) + std::sin(x); }));
    for (double x : {0.0, 0.123, 1.7, 5.9}) {
        EXPECT_NEAR(evaluate(f, x), std::cos(3 * x) + std::sin(x), 1e-14) << x;
    }
}

TEST(RealFft, SharedPlanAndNormalisation) {
    const auto a = RealFft::of_size(32);
    const auto b = RealFft::of_size(32);
    EXPECT_EQ(a.get(), b.get());
    std::vector<double> in(32, 1.0);
    std::vector<Complex> out(17);
    a->forward(in, out);
    EXPECT_NEAR(out[0].real(), 1.0, 1e-15);
    EXPECT_FALSE(fft_backend_version().empty());
}
