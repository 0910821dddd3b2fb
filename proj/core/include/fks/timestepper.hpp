#pragma once

#include "fks/diagnostics.hpp"
#include "fks/dynamics.hpp"
#include "fks/spectral.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fks {

enum class StepMethod { AdaptiveERK, ETDRK4 };

std::string_view to_string(StepMethod m) noexcept;
/// Accepts "AdaptiveERK"/"erk" and "ETDRK4"/"etdrk4".
StepMethod parse_method(std::string_view s);

struct StepperConfig {
    StepMethod method = StepMethod::AdaptiveERK;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_fixed = 1e-3; ///< ETDRK4 step
    double safety = 0.9;
    int contour_points = 32; ///< ETDRK4 coefficient contour
    /// Drops the nonlinear term; used for linear-dispersion checks.
    bool nonlinear = true;

    void validate() const;
};

struct IntegrationState {
    double t = 0.0;
    SpectralField field;
    double dt = 0.0;
    long n_steps = 0;
    long n_rejects = 0;
};

/// Dormand-Prince 5(4) with a normwise error controller.
///
/// A step is accepted when the weighted RMS of the embedded error estimate
/// is at most abs_tol + rel_tol * RMS(u) (RMS over the full spectrum, equal
/// to the physical RMS by Plancherel). The next step is
/// dt * clamp(safety * err^{-1/5}, 0.2, 5).
class AdaptiveErkStepper {
public:
    AdaptiveErkStepper(const ModelParams& p, const Grid& grid, const StepperConfig& cfg);

    /// Advances by one accepted step no longer than max_dt. Leaves the state
    /// untouched and throws IntegrationAborted when dt would drop below
    /// dt_min or a stage is non-finite.
    void step(IntegrationState& s, double max_dt);
    void step(IntegrationState& s) { step(s, s.dt); }

private:
    RhsEvaluator rhs_;
    StepperConfig cfg_;
    std::vector<std::vector<Complex>> k_;
    std::vector<Complex> stage_, y5_, err_;
    bool fsal_valid_ = false;
};

/// Per-mode ETDRK4 weights for one step size.
struct CoefficientTables {
    double dt = 0.0;
    std::vector<double> e;      ///< exp(sigma dt)
    std::vector<double> e_half; ///< exp(sigma dt / 2)
    std::vector<double> q;      ///< dt (e^{z/2} - 1)/z
    std::vector<double> f1;     ///< dt (-4 - z + e^z(4 - 3z + z^2))/z^3
    std::vector<double> f2;     ///< dt (2 + z + e^z(z - 2))/z^3
    std::vector<double> f3;     ///< dt (-4 - 3z - z^2 + e^z(4 - z))/z^3
};

/// Tables with z = sigma dt, the phi-type weights averaged over
/// contour_points on the unit circle around z to avoid cancellation.
CoefficientTables etdrk4_coefficients(const ModelParams& p, const Grid& grid, double dt,
                                      int contour_points = 32);

/// Fixed-step fourth-order exponential time differencing (Cox-Matthews);
/// exact for the linear part.
class Etdrk4Stepper {
public:
    Etdrk4Stepper(const ModelParams& p, const Grid& grid, const StepperConfig& cfg);

    /// One step of length dt (dt_fixed unless given). Tables for other step
    /// lengths are built on demand and cached for the last one used.
    void step(IntegrationState& s, std::optional<double> dt = std::nullopt);

    const CoefficientTables& tables() const noexcept { return fixed_; }

private:
    const CoefficientTables& tables_for(double dt);

    RhsEvaluator rhs_;
    StepperConfig cfg_;
    CoefficientTables fixed_;
    CoefficientTables other_;
    std::vector<Complex> nu_, na_, nb_, nc_, a_, b_, c_;
};

/// One adaptive step; convenience wrapper that builds a stepper.
IntegrationState step_adaptive(IntegrationState state, const ModelParams& p, const StepperConfig& cfg);
/// One ETDRK4 step of dt_fixed.
IntegrationState step_etdrk4(IntegrationState state, const ModelParams& p, const StepperConfig& cfg);

enum class RunStatus { Complete, Aborted };
std::string_view to_string(RunStatus s) noexcept;

struct SnapshotRef {
    double t = 0.0;
    std::string path;
};

/// Time series and outcome of one integration.
struct RunRecord {
    std::string config_echo; ///< JSON text of the run configuration, when known
    std::vector<DiagnosticsSample> samples;
    std::vector<SnapshotRef> snapshots;
    RunStatus status = RunStatus::Complete;
    std::string message;
    double wall_time = 0.0;
    long n_steps = 0;
    long n_rejects = 0;
    double last_dt = 0.0; ///< step size the controller would take next
    std::optional<SpectralField> final_field;
};

/// Hooks invoked by integrate. Samples are taken at t = 0, at every
/// multiple of sample_interval and at t_end; steps are shortened to land on
/// those times and on snapshot_times.
struct ObserverSet {
    double sample_interval = 0.0; ///< <= 0 samples only the endpoints
    std::vector<double> snapshot_times;
    std::function<void(const DiagnosticsSample&, const SpectralField&)> on_sample;
    /// Returns the path the snapshot was written to.
    std::function<std::string(double t, const SpectralField&)> on_snapshot;
    /// Called with the last good state when a step aborts.
    std::function<std::string(double t, const SpectralField&)> on_abort;
};

/// Integrates from t = 0 to t_end, re-zeroing the mean coefficient after
/// every step. An abort returns the partial record with status Aborted.
RunRecord integrate(const SpectralField& u0, const ModelParams& p, const StepperConfig& cfg,
                    double t_end, const ObserverSet& observers = {});

} // namespace fks
