#include "fks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fks {

ModeRange default_fit_range(const Grid& grid) { return {grid.n() / 8, grid.n() / 4}; }

AnalyticityFit fit_analyticity_radius(const SpectralField& f, ModeRange range) {
    const auto c = f.half();
    const int nyq = static_cast<int>(c.size()) - 1;
    if (range.lo < 1 || range.hi > nyq || range.lo > range.hi) {
        throw std::invalid_argument("fit range must lie inside [1, n/2]");
    }
    double cmax = 0.0;
    for (const auto& z : c) cmax = std::max(cmax, std::abs(z));
    const double floor = 1e-13 * cmax;

    std::vector<double> xs;
    std::vector<double> ys;
    for (int xi = range.lo; xi <= range.hi; ++xi) {
        const double a = std::abs(c[static_cast<size_t>(xi)]);
        if (a <= floor || a == 0.0) continue;
        xs.push_back(xi);
        ys.push_back(std::log(a));
    }
    AnalyticityFit fit;
    fit.used_modes = static_cast<int>(xs.size());
    if (xs.size() < 8) return fit;

    const double m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double xbar = sx / m;
    const double ybar = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    double ss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (ybar + slope * (xs[i] - xbar));
        ss += r * r;
    }
    const double drop = std::abs(slope) * (xs.back() - xs.front());
    fit.rho = -slope;
    fit.fitted = true;
    fit.residual = drop > 0.0 ? std::sqrt(ss / m) / drop : std::numeric_limits<double>::infinity();
    fit.poor = !(fit.residual <= kPoorFitResidual);
    return fit;
}

int count_critical_points(const PhysicalField& u) {
    const auto du = to_physical(derivative(to_spectral(u), 1));
    const auto v = du.values();
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax == 0.0) return 0;
    const double zero = 1e-13 * vmax;

    auto sign_of = [&](double x) { return x > zero ? 1 : (x < -zero ? -1 : 0); };
    // Start from the last nonzero value so the cyclic wrap is counted.
    int current = 0;
    for (auto it = v.rbegin(); it != v.rend() && current == 0; ++it) current = sign_of(*it);
    int changes = 0;
    for (double x : v) {
        const int s = sign_of(x);
        if (s != 0 && s != current) {
            ++changes;
            current = s;
        }
    }
    return changes;
}

int count_critical_points(const SpectralField& f) { return count_critical_points(to_physical(f)); }

DiagnosticsSample sample(const SpectralField& u, double t, const ModelParams& p, double dt) {
    DiagnosticsSample s;
    s.t = t;
    s.dt = dt;
    const auto phys = to_physical(u);
    s.l2 = sobolev_norm(u, 0.0);
    s.linf = lp_norm(phys, std::numeric_limits<double>::infinity());
    s.dx_linf = lp_norm(to_physical(derivative(u, 1)), std::numeric_limits<double>::infinity());
    const double half_order = p.variant == ModelVariant::ClassicKS ? 2.0 : 0.5 * (1.0 + p.delta);
    s.h_half = sobolev_norm(u, half_order);
    s.mean = u.mean();
    s.n_critical = count_critical_points(phys);
    const auto fit = fit_analyticity_radius(u, default_fit_range(u.grid()));
    s.rho = fit.fitted ? std::max(0.0, fit.rho) : std::numeric_limits<double>::quiet_NaN();
    return s;
}

std::string_view to_string(Regime r) noexcept {
    return r == Regime::Steady ? "Steady" : "Chaotic";
}

RegimeSpread regime_spread(std::span<const DiagnosticsSample> series, double t_lo, double t_hi) {
    double lo_inf = std::numeric_limits<double>::infinity(), hi_inf = -lo_inf;
    double lo_l2 = lo_inf, hi_l2 = -lo_inf;
    double sum_inf = 0.0, sum_l2 = 0.0;
    RegimeSpread out;
    for (const auto& s : series) {
        if (s.t < t_lo || s.t > t_hi) continue;
        ++out.samples;
        lo_inf = std::min(lo_inf, s.linf);
        hi_inf = std::max(hi_inf, s.linf);
        lo_l2 = std::min(lo_l2, s.l2);
        hi_l2 = std::max(hi_l2, s.l2);
        sum_inf += s.linf;
        sum_l2 += s.l2;
    }
    if (out.samples == 0) return out;
    auto spread = [&](double lo, double hi, double sum) {
        const double mean = sum / out.samples;
        if (hi - lo == 0.0) return 0.0;
        return mean > 0.0 ? (hi - lo) / mean : std::numeric_limits<double>::infinity();
    };
    out.linf = spread(lo_inf, hi_inf, sum_inf);
    out.l2 = spread(lo_l2, hi_l2, sum_l2);
    return out;
}

Regime classify_regime(std::span<const DiagnosticsSample> series, double t_lo, double t_hi,
                       double tol_rel) {
    const auto spread = regime_spread(series, t_lo, t_hi);
    if (spread.samples < 10) {
        throw std::invalid_argument("regime window holds " + std::to_string(spread.samples) +
                                    " samples; at least 10 are required");
    }
    return spread.linf < tol_rel && spread.l2 < tol_rel ? Regime::Steady : Regime::Chaotic;
}

} // namespace fks
