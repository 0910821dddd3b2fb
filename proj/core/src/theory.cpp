#include "fks/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fks {

namespace {

void require_fractional(const ModelParams& p) {
    if (p.variant != ModelVariant::Fractional) {
        throw std::invalid_argument("theory constants are defined for the fractional model only");
    }
    p.validate();
}

} // namespace

double theory_lambda(const ModelParams& p) {
    require_fractional(p);
    const double base = 6.0 * p.gamma / ((1.0 + p.delta) * p.eps);
    return std::pow(base, 1.0 / (1.0 + p.delta - p.gamma)) + 1.0;
}

double analytic_growth_argmax(double lambda, double k, const ModelParams& p) {
    require_fractional(p);
    const double m = std::max(1.0, p.gamma);
    const double a = 2.0 * (lambda + k + 1.0);
    return std::pow(m * a / (p.eps * (1.0 + p.delta)), 1.0 / (1.0 + p.delta - m));
}

double analytic_growth_constant(double lambda, double k, const ModelParams& p) {
    const double m = std::max(1.0, p.gamma);
    const double a = 2.0 * (lambda + k + 1.0);
    const double xi = analytic_growth_argmax(lambda, k, p);
    // a xi^m - eps xi^{1+delta} with eps xi^{1+delta-m} = m a / (1+delta) at the maximiser.
    const double log_c = std::log(a) + m * std::log(xi) + std::log1p(-m / (1.0 + p.delta));
    return std::exp(log_c);
}

AnalyticityConstants theory_analyticity(double u0_h3, double u0_linf, const ModelParams& p,
                                        double c) {
    require_fractional(p);
    if (!(u0_h3 > 0.0) || !(u0_linf > 0.0)) {
        throw std::invalid_argument("initial-data norms must be positive");
    }
    if (!(c > 0.0)) throw std::invalid_argument("the generic constant c must be positive");
    AnalyticityConstants out;
    out.lambda = std::numbers::sqrt2 * u0_linf;
    const double gap = out.lambda * out.lambda - u0_linf * u0_linf;
    const double energy = u0_h3 * u0_h3 + 1.0 / gap;
    out.k_strip = energy * energy * energy;
    out.c_analytic = analytic_growth_constant(out.lambda, out.k_strip, p);
    // The initial energy in the existence-time formula is the same cube as k.
    out.t_analytic = std::log1p(out.c_analytic / (out.k_strip * c)) / (3.0 * out.c_analytic);
    out.width = out.k_strip * out.t_analytic;
    out.e_script = out.c_analytic / out.k_strip;
    return out;
}

OscillationBound theory_oscillation(double M, double u0_h3, double u0_linf, const ModelParams& p,
                                    double c) {
    if (!(M > 1.0)) throw std::invalid_argument("M must exceed 1");
    const auto a = theory_analyticity(u0_h3, u0_linf, p, c);
    OscillationBound out;
    out.tau_m = a.width / M;
    out.osc_bound = 4.0 * std::numbers::pi / std::numbers::ln2 * std::log(M / out.tau_m) / out.tau_m;
    return out;
}

double gronwall_rate(const ModelParams& p) {
    require_fractional(p);
    const double base = 2.0 * p.gamma / (p.eps * (1.0 + p.delta));
    return std::pow(base, 1.0 / (1.0 + p.delta - p.gamma));
}

double gronwall_l2_envelope(double u0_l2, const ModelParams& p, double t) {
    return u0_l2 * u0_l2 * std::exp(2.0 * gronwall_rate(p) * t);
}

TheoryConstants theory_constants(double M, double u0_h3, double u0_linf, const ModelParams& p,
                                 double c) {
    const auto a = theory_analyticity(u0_h3, u0_linf, p, c);
    const auto o = theory_oscillation(M, u0_h3, u0_linf, p, c);
    TheoryConstants out;
    out.lambda = theory_lambda(p);
    out.c_analytic = a.c_analytic;
    out.k_strip = a.k_strip;
    out.t_analytic = a.t_analytic;
    out.width = a.width;
    out.e_script = a.e_script;
    out.tau_m = o.tau_m;
    out.osc_bound = o.osc_bound;
    out.gronwall_rate = gronwall_rate(p);
    return out;
}

double power_series_tail(int M, double s) {
    if (!(s > 1.0)) throw std::invalid_argument("series exponent must exceed 1");
    if (M < 0) throw std::invalid_argument("M must be non-negative");
    constexpr int kDirect = 20000;
    const double k_end = static_cast<double>(M) + kDirect;
    // Sum the smallest terms first.
    double sum = 0.0;
    for (int xi = M + kDirect; xi > M; --xi) sum += std::pow(static_cast<double>(xi), -s);
    // sum_{xi > K} f(xi) = int_K^inf f - f(K)/2 - f'(K)/12 + f'''(K)/720 - ...
    const double f = std::pow(k_end, -s);
    const double integral = k_end * f / (s - 1.0);
    const double d1 = -s * f / k_end;
    const double d3 = -s * (s + 1.0) * (s + 2.0) * f / (k_end * k_end * k_end);
    return sum + integral - 0.5 * f - d1 / 12.0 + d3 / 720.0;
}

DirichletTools::DirichletTools(const Grid& grid, double x0, int M)
    : grid_(grid), x0_(x0), M_(M), kernel_(grid) {
    if (M < 1 || M >= grid.nyquist()) {
        throw std::invalid_argument("Dirichlet order M must satisfy 1 <= M < n/2");
    }
    for (int j = 0; j < grid.n(); ++j) {
        const double y = grid.node(j) - x0;
        double b = 1.0;
        for (int xi = 1; xi <= M; ++xi) b += 2.0 * std::cos(xi * y);
        kernel_[j] = b;
    }
}

TailCheck DirichletTools::tail_check(const SpectralField& u, double delta) const {
    if (u.grid() != grid_) throw std::invalid_argument("field lives on a different grid");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const double at_x0 = evaluate(u, x0_);
    if (std::abs(at_x0) > 1e-10) {
        throw std::invalid_argument("tail check needs u(x0) = 0, got " + std::to_string(at_x0));
    }
    const auto c = u.half();
    double cmax = 0.0;
    for (auto v : c) cmax = std::max(cmax, std::abs(v));
    // Coefficients at roundoff level count as zero and are dropped below.
    int top = 0;
    for (int xi = 0; xi < static_cast<int>(c.size()); ++xi) {
        if (std::abs(c[static_cast<size_t>(xi)]) > 1e-13 * cmax) top = xi;
    }
    if (2 * top >= grid_.nyquist()) {
        throw std::invalid_argument("field bandwidth too large for an alias-free square");
    }

    // g(x) = u(x + x0)^2: shift the spectrum, square on the grid.
    SpectralField shifted(grid_);
    for (int xi = 0; xi <= top; ++xi) {
        shifted.half()[static_cast<size_t>(xi)] =
            c[static_cast<size_t>(xi)] * std::polar(1.0, xi * x0_);
    }
    auto g_phys = to_physical(shifted);
    for (double& v : g_phys.values()) v *= v;
    const auto g = to_spectral(g_phys);

    TailCheck out{};
    const double s = 1.0 + delta;
    double weighted = 0.0;
    for (int xi = -grid_.nyquist() + 1; xi <= grid_.nyquist(); ++xi) {
        const Complex gx = g.coeff(xi);
        if (std::abs(xi) <= M_) {
            out.head_sum += gx;
        } else {
            out.tail_sum += gx;
            weighted += std::pow(std::abs(static_cast<double>(xi)), s) * std::norm(gx);
        }
    }
    out.identity_residual = std::abs(out.head_sum + out.tail_sum);
    out.weighted_tail = std::sqrt(weighted);
    out.series_tail = std::sqrt(2.0 * power_series_tail(M_, s));
    out.bound = out.weighted_tail * out.series_tail;
    out.holds = std::abs(out.tail_sum) <= out.bound * (1.0 + 1e-12);
    return out;
}

} // namespace fks
