#pragma once

#include "fks/diagnostics.hpp"
#include "fks/dynamics.hpp"
#include "fks/spectral.hpp"
#include "fks/timestepper.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fks {

enum class InitialKind {
    Cos,         ///< cos x
    CosGaussSin, ///< cos x + exp(-x^2) sin x on [-pi, pi)
    RandomH3,    ///< |xi|^{-3.5} magnitudes, seeded uniform phases
    FromSnapshot ///< an FKS1 file
};

struct InitialCondition {
    InitialKind kind = InitialKind::Cos;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    std::filesystem::path snapshot;

    /// "cos", "cos-gauss-sin", "random-h3" or "snapshot:<path>".
    static InitialCondition parse(std::string_view spec);
    std::string to_spec() const;
};

/// The initial field projected to zero mean. For FromSnapshot the file's
/// n must equal grid.n(). When removed_mean is given it receives the mean
/// that was subtracted.
SpectralField make_initial(const InitialCondition& ic, const Grid& grid, double* removed_mean = nullptr);

struct RunConfig {
    ModelParams params;
    int grid_n = 4096;
    StepperConfig stepper;
    double t_end = 1.0;
    InitialCondition ic;
    double sample_interval = 0.01;
    std::vector<double> snapshot_times;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Canonical JSON text of a run configuration (stable key order).
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(std::string_view text);

/// Integrates cfg and, when out_dir is non-empty, writes manifest.json,
/// series.csv and snapshot files there. Integrator aborts produce a record
/// with status Aborted; outputs written so far are kept.
RunRecord run_experiment(const RunConfig& cfg);

/// CSV header of series.csv.
inline constexpr std::string_view kSeriesHeader = "t,l2,linf,dx_linf,h_half,mean,n_critical,rho,dt";

/// One CSV row, full double precision.
std::string series_row(const DiagnosticsSample& s);

/// Reads a series.csv written by run_experiment.
std::vector<DiagnosticsSample> read_series(const std::filesystem::path& path);

/// Parameter axes a sweep can scan.
enum class SweepAxis { Gamma, Delta, Eps };
std::string_view to_string(SweepAxis a) noexcept;
SweepAxis parse_axis(std::string_view s);
ModelParams with_axis(ModelParams p, SweepAxis axis, double value);

struct SweepPoint {
    double value = 0.0;
    std::optional<Regime> regime; ///< empty when the run failed
    double k_star = 0.0;
    double final_l2 = 0.0;
    double final_linf = 0.0;
    RegimeSpread spread;
    std::string status;
};

struct SweepRecord {
    SweepAxis axis = SweepAxis::Gamma;
    std::vector<SweepPoint> points;
    std::optional<std::pair<double, double>> transition_bracket;
};

struct SweepOptions {
    /// Classification window; defaults to the second half of the run.
    std::optional<double> window_start;
    double tol_rel = 1e-3;
    /// Worker threads; 0 reads FKS_THREADS, falling back to hardware concurrency.
    unsigned threads = 0;
};

/// Runs base with the axis parameter set to each value (ascending, >= 2
/// entries), point i writing into base.out_dir/point_<i>, then classifies
/// each run and brackets the regime flip.
SweepRecord sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                  const SweepOptions& opts = {});

/// Adjacent (Steady, Chaotic) pair in either order when the classified
/// points flip exactly once; failed points are skipped.
std::optional<std::pair<double, double>> transition_bracket(const std::vector<SweepPoint>& points);

struct Transition {
    std::pair<double, double> bracket;
    double k_star = 0.0; ///< k_star at the bracket midpoint
};

std::optional<Transition> detect_transition(const SweepRecord& s, const ModelParams& base);

std::string sweep_to_json(const SweepRecord& s);

/// Worker count from FKS_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

} // namespace fks
