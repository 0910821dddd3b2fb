#pragma once

#include "fks/dynamics.hpp"
#include "fks/spectral.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fks {

/// Observables of one state along a trajectory.
struct DiagnosticsSample {
    double t = 0.0;
    double l2 = 0.0;      ///< ||u||_{L2}
    double linf = 0.0;    ///< ||u||_inf
    double dx_linf = 0.0; ///< ||u_x||_inf
    double h_half = 0.0;  ///< ||Lambda^{(1+delta)/2} u||_{L2}
    double mean = 0.0;
    int n_critical = 0;
    double rho = 0.0;     ///< fitted analyticity radius, NaN when not fitted
    double dt = 0.0;
};

struct AnalyticityFit {
    double rho = 0.0;
    bool fitted = false;
    /// RMS deviation of log|c| from the fitted line, divided by the
    /// log-drop of the line across the range.
    double residual = 0.0;
    bool poor = false;
    int used_modes = 0;
};

/// Wavenumber interval [lo, hi], inclusive.
struct ModeRange {
    int lo;
    int hi;
};

/// Residuals above this (see AnalyticityFit::residual) mark a fit as poor.
inline constexpr double kPoorFitResidual = 2e-3;

/// Default analyticity fit range [n/8, n/4].
ModeRange default_fit_range(const Grid& grid);

/// Negated least-squares slope of log|c(xi)| against xi over the range.
/// Modes below 1e-13 of the largest |c| are skipped; fewer than 8 usable
/// modes returns fitted = false.
AnalyticityFit fit_analyticity_radius(const SpectralField& f, ModeRange range);

/// Sign changes of u_x at the nodes, traversed cyclically. Values within
/// 1e-13 of max |u_x| count as zero and inherit the previous sign.
int count_critical_points(const PhysicalField& u);
int count_critical_points(const SpectralField& f);

/// All sample fields at time t. The h_half order is (1+delta)/2 for the
/// fractional model and 2 for ClassicKS.
DiagnosticsSample sample(const SpectralField& u, double t, const ModelParams& p, double dt = 0.0);

enum class Regime { Steady, Chaotic };

std::string_view to_string(Regime r) noexcept;

/// Steady when both ||u||_inf and ||u||_{L2} vary by less than tol_rel
/// (max - min over mean) across the samples with t in [t_lo, t_hi].
/// Throws std::invalid_argument when fewer than 10 samples fall in the
/// window.
Regime classify_regime(std::span<const DiagnosticsSample> series, double t_lo, double t_hi,
                       double tol_rel = 1e-3);

/// Relative spread (max - min) / mean of one norm over the window; used by
/// classify_regime and reported in sweep summaries.
struct RegimeSpread {
    double linf = 0.0;
    double l2 = 0.0;
    int samples = 0;
};
RegimeSpread regime_spread(std::span<const DiagnosticsSample> series, double t_lo, double t_hi);

} // namespace fks
