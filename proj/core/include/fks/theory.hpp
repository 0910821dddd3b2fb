#pragma once

#include "fks/dynamics.hpp"
#include "fks/spectral.hpp"

namespace fks {

/// Closed-form constants from the a-priori estimates for the fractional
/// model. All functions require the fractional variant with gamma < 1+delta.
///
/// Several estimates carry a generic constant c that is never fixed
/// numerically; it is passed explicitly (default 1) and widths are reported
/// in units of it.

/// lambda = (6 gamma / ((1+delta) eps))^{1/(1+delta-gamma)} + 1, the level
/// above which the cut-off Dirichlet kernel dominates in the L2 absorbing
/// ball argument.
double theory_lambda(const ModelParams& p);

/// C(lambda, k) = max over real xi of 2(lambda+k+1)|xi|^m - eps |xi|^{1+delta},
/// m = max(1, gamma), in closed form.
double analytic_growth_constant(double lambda, double k, const ModelParams& p);

/// Maximiser of the bracket in analytic_growth_constant.
double analytic_growth_argmax(double lambda, double k, const ModelParams& p);

struct AnalyticityConstants {
    double lambda = 0.0;     ///< sqrt(2) ||u0||_inf
    double k_strip = 0.0;    ///< (||u0'''||^2 + 1/(lambda^2 - ||u0||_inf^2))^3
    double c_analytic = 0.0; ///< C(lambda, k)
    double t_analytic = 0.0; ///< guaranteed existence time T of the analytic extension
    double width = 0.0;      ///< k T = log(E/c + 1) / (3E)
    double e_script = 0.0;   ///< E = C(lambda, k) / k
};

/// u0_h3 = ||d^3 u0/dx^3||_{L2}, u0_linf = ||u0||_inf; both must be positive.
AnalyticityConstants theory_analyticity(double u0_h3, double u0_linf, const ModelParams& p,
                                        double c = 1.0);

struct OscillationBound {
    double tau_m = 0.0;     ///< width / M
    double osc_bound = 0.0; ///< (4 pi / log 2) log(M / tau_M) / tau_M
};

/// Bound on the number of critical points in the large-gradient region for
/// T/M < t < T. Requires M > 1.
OscillationBound theory_oscillation(double M, double u0_h3, double u0_linf, const ModelParams& p,
                                    double c = 1.0);

/// (2 gamma / (eps (1+delta)))^{1/(1+delta-gamma)}.
double gronwall_rate(const ModelParams& p);

/// ||u0||^2 exp(2 gronwall_rate t): bound on the squared L2 norm at t.
double gronwall_l2_envelope(double u0_l2, const ModelParams& p, double t);

struct TheoryConstants {
    double lambda = 0.0;
    double c_analytic = 0.0;
    double k_strip = 0.0;
    double t_analytic = 0.0;
    double width = 0.0;
    double e_script = 0.0;
    double tau_m = 0.0;
    double osc_bound = 0.0;
    double gronwall_rate = 0.0;
};

TheoryConstants theory_constants(double M, double u0_h3, double u0_linf, const ModelParams& p,
                                 double c = 1.0);

/// Result of checking the Dirichlet-kernel tail estimate on one field.
struct TailCheck {
    Complex head_sum;         ///< sum_{|xi| <= M} g^(xi)
    Complex tail_sum;         ///< sum_{|xi| > M} g^(xi)
    double identity_residual; ///< |head + tail|, zero since g(0) = u(x0)^2 = 0
    double weighted_tail;     ///< (sum_{|xi|>M} |xi|^{1+delta} |g^|^2)^{1/2}
    double series_tail;       ///< (sum_{|xi|>M} |xi|^{-(1+delta)})^{1/2}, summed to convergence
    double bound;             ///< weighted_tail * series_tail
    bool holds;               ///< |tail_sum| <= bound
};

/// The kernel b_M(x) = sum_{|xi| <= M} exp(-i xi (x - x0)) on a grid, and the
/// tail identity/bound check for g(x) = u(x + x0)^2.
class DirichletTools {
public:
    /// Requires 1 <= M < n/2.
    DirichletTools(const Grid& grid, double x0, int M);

    const PhysicalField& kernel() const noexcept { return kernel_; }
    double x0() const noexcept { return x0_; }
    int M() const noexcept { return M_; }

    /// Throws std::invalid_argument when |u(x0)| > 1e-10, or when u carries
    /// modes above n/4 beyond 1e-13 relative to max |c| (g would alias on this grid).
    TailCheck tail_check(const SpectralField& u, double delta) const;

private:
    Grid grid_;
    double x0_;
    int M_;
    PhysicalField kernel_;
};

/// sum_{xi > M} xi^{-s} for s > 1: direct summation followed by an
/// Euler-Maclaurin remainder.
double power_series_tail(int M, double s);

} // namespace fks
