#include "fks/timestepper.hpp"

#include "fks/error.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fks {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<std::array<double, 6>, 7> kA = {{
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
constexpr std::array<double, 7> kB = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
                                      11.0 / 84, 0};
// b - b*, the embedded fourth-order error weights.
constexpr std::array<double, 7> kE = {71.0 / 57600,  0,           -71.0 / 16695, 71.0 / 1920,
                                      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// RMS over the full spectrum from a half spectrum.
double spectral_rms(std::span<const Complex> c) {
    const size_t nyq = c.size() - 1;
    double sum = std::norm(c[0]) + std::norm(c[nyq]);
    for (size_t xi = 1; xi < nyq; ++xi) sum += 2.0 * std::norm(c[xi]);
    return std::sqrt(sum / static_cast<double>(2 * nyq));
}

bool all_finite(std::span<const Complex> c) {
    for (const auto& z : c) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

} // namespace

std::string_view to_string(StepMethod m) noexcept {
    return m == StepMethod::AdaptiveERK ? "AdaptiveERK" : "ETDRK4";
}

StepMethod parse_method(std::string_view s) {
    if (s == "AdaptiveERK" || s == "erk") return StepMethod::AdaptiveERK;
    if (s == "ETDRK4" || s == "etdrk4") return StepMethod::ETDRK4;
    throw std::invalid_argument("unknown integration method '" + std::string(s) + "'");
}

std::string_view to_string(RunStatus s) noexcept {
    return s == RunStatus::Complete ? "complete" : "aborted";
}

void StepperConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(dt_min > 0.0) || !(dt_min < dt_init)) {
        throw std::invalid_argument("step sizes must satisfy 0 < dt_min < dt_init");
    }
    if (!(dt_fixed > 0.0)) throw std::invalid_argument("dt_fixed must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("safety must lie in (0, 1]");
    if (contour_points < 4) throw std::invalid_argument("contour_points must be >= 4");
}

AdaptiveErkStepper::AdaptiveErkStepper(const ModelParams& p, const Grid& grid, const StepperConfig& cfg)
    : rhs_(p, grid, cfg.nonlinear),
      cfg_(cfg),
      k_(7, std::vector<Complex>(static_cast<size_t>(grid.modes()))),
      stage_(static_cast<size_t>(grid.modes())),
      y5_(static_cast<size_t>(grid.modes())),
      err_(static_cast<size_t>(grid.modes())) {
    cfg.validate();
}

void AdaptiveErkStepper::step(IntegrationState& s, double max_dt) {
    if (s.field.grid() != rhs_.grid()) throw std::invalid_argument("state grid does not match stepper");
    if (!(s.dt >= cfg_.dt_min)) {
        throw IntegrationAborted("step size " + std::to_string(s.dt) + " is below dt_min");
    }
    const auto y = s.field.half();
    const size_t m = y.size();
    const double dt_prev = s.dt;
    double h = std::min(s.dt, max_dt);
    const bool clipped = h < s.dt;

    if (!fsal_valid_) rhs_.full(y, k_[0]);

    for (;;) {
        for (size_t st = 1; st < 7; ++st) {
            for (size_t i = 0; i < m; ++i) {
                Complex acc = y[i];
                for (size_t j = 0; j < st; ++j) {
                    if (kA[st][j] != 0.0) acc += h * kA[st][j] * k_[j][i];
                }
                stage_[i] = acc;
            }
            rhs_.full(stage_, k_[st]);
            // Stage 7 is evaluated at the fifth-order solution itself.
            if (st == 6) std::copy(stage_.begin(), stage_.end(), y5_.begin());
        }
        for (size_t i = 0; i < m; ++i) {
            Complex e{};
            for (size_t j = 0; j < 7; ++j) e += kE[j] * k_[j][i];
            err_[i] = h * e;
        }
        if (!all_finite(y5_) || !all_finite(err_)) {
            fsal_valid_ = false;
            throw IntegrationAborted("non-finite stage value at t = " + std::to_string(s.t));
        }
        const double scale = cfg_.abs_tol + cfg_.rel_tol * std::max(spectral_rms(y), spectral_rms(y5_));
        const double err = spectral_rms(err_) / scale;

        if (err <= 1.0) {
            const double factor = err == 0.0 ? 5.0 : std::clamp(cfg_.safety * std::pow(err, -0.2), 0.2, 5.0);
            const double proposal = h * factor;
            std::copy(y5_.begin(), y5_.end(), y.begin());
            std::swap(k_[0], k_[6]);
            fsal_valid_ = true;
            s.t += h;
            ++s.n_steps;
            s.dt = clipped && proposal >= h ? std::max(dt_prev, proposal) : proposal;
            return;
        }
        ++s.n_rejects;
        h *= std::clamp(cfg_.safety * std::pow(err, -0.2), 0.2, 1.0);
        if (h < cfg_.dt_min) {
            throw IntegrationAborted("step size fell below dt_min at t = " + std::to_string(s.t) +
                                     " (stiffness or blow-up)");
        }
        s.dt = h;
    }
}

CoefficientTables etdrk4_coefficients(const ModelParams& p, const Grid& grid, double dt,
                                      int contour_points) {
    if (!(dt > 0.0)) throw std::invalid_argument("ETDRK4 step must be positive");
    if (contour_points < 4) throw std::invalid_argument("contour_points must be >= 4");
    p.validate();
    const auto modes = static_cast<size_t>(grid.modes());
    CoefficientTables t;
    t.dt = dt;
    t.e.resize(modes);
    t.e_half.resize(modes);
    t.q.resize(modes);
    t.f1.resize(modes);
    t.f2.resize(modes);
    t.f3.resize(modes);

    std::vector<Complex> roots(static_cast<size_t>(contour_points));
    for (int k = 0; k < contour_points; ++k) {
        roots[static_cast<size_t>(k)] = std::polar(1.0, std::numbers::pi * (2.0 * k + 1.0) / contour_points);
    }
    for (size_t xi = 0; xi < modes; ++xi) {
        const double z0 = linear_symbol(p, static_cast<int>(xi)) * dt;
        t.e[xi] = std::exp(z0);
        t.e_half[xi] = std::exp(0.5 * z0);
        Complex q{}, f1{}, f2{}, f3{};
        for (const auto& r : roots) {
            const Complex z = z0 + r;
            const Complex ez = std::exp(z);
            const Complex z3 = z * z * z;
            q += (std::exp(0.5 * z) - 1.0) / z;
            f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            f2 += (2.0 + z + ez * (z - 2.0)) / z3;
            f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
        const double w = dt / contour_points;
        t.q[xi] = w * q.real();
        t.f1[xi] = w * f1.real();
        t.f2[xi] = w * f2.real();
        t.f3[xi] = w * f3.real();
    }
    return t;
}

Etdrk4Stepper::Etdrk4Stepper(const ModelParams& p, const Grid& grid, const StepperConfig& cfg)
    : rhs_(p, grid, cfg.nonlinear), cfg_(cfg), fixed_(etdrk4_coefficients(p, grid, cfg.dt_fixed, cfg.contour_points)) {
    cfg.validate();
    const auto m = static_cast<size_t>(grid.modes());
    for (auto* v : {&nu_, &na_, &nb_, &nc_, &a_, &b_, &c_}) v->resize(m);
}

const CoefficientTables& Etdrk4Stepper::tables_for(double dt) {
    if (dt == fixed_.dt) return fixed_;
    if (dt != other_.dt) {
        other_ = etdrk4_coefficients(rhs_.params(), rhs_.grid(), dt, cfg_.contour_points);
    }
    return other_;
}

void Etdrk4Stepper::step(IntegrationState& s, std::optional<double> dt) {
    if (s.field.grid() != rhs_.grid()) throw std::invalid_argument("state grid does not match stepper");
    const double h = dt.value_or(cfg_.dt_fixed);
    const auto& tb = tables_for(h);
    const auto u = s.field.half();
    const size_t m = u.size();

    rhs_.nonlinear(u, nu_);
    for (size_t i = 0; i < m; ++i) a_[i] = tb.e_half[i] * u[i] + tb.q[i] * nu_[i];
    rhs_.nonlinear(a_, na_);
    for (size_t i = 0; i < m; ++i) b_[i] = tb.e_half[i] * u[i] + tb.q[i] * na_[i];
    rhs_.nonlinear(b_, nb_);
    for (size_t i = 0; i < m; ++i) c_[i] = tb.e_half[i] * a_[i] + tb.q[i] * (2.0 * nb_[i] - nu_[i]);
    rhs_.nonlinear(c_, nc_);
    // Assemble into c_ so a NaN leaves the state untouched.
    for (size_t i = 0; i < m; ++i) {
        c_[i] = tb.e[i] * u[i] + tb.f1[i] * nu_[i] + 2.0 * tb.f2[i] * (na_[i] + nb_[i]) + tb.f3[i] * nc_[i];
    }
    if (!all_finite(c_)) throw IntegrationAborted("non-finite ETDRK4 update at t = " + std::to_string(s.t));
    std::copy(c_.begin(), c_.end(), u.begin());
    s.t += h;
    s.dt = cfg_.dt_fixed;
    ++s.n_steps;
}

IntegrationState step_adaptive(IntegrationState state, const ModelParams& p, const StepperConfig& cfg) {
    AdaptiveErkStepper stepper(p, state.field.grid(), cfg);
    if (state.dt <= 0.0) state.dt = cfg.dt_init;
    stepper.step(state);
    return state;
}

IntegrationState step_etdrk4(IntegrationState state, const ModelParams& p, const StepperConfig& cfg) {
    Etdrk4Stepper stepper(p, state.field.grid(), cfg);
    stepper.step(state);
    return state;
}

namespace {

// Merged, sorted event times in (0, t_end].
struct EventClock {
    double t_end;
    double interval;
    std::vector<double> snapshots;
    long next_sample = 1;
    size_t next_snapshot = 0;

    double next_sample_time() const {
        if (interval <= 0.0) return t_end;
        return std::min(t_end, static_cast<double>(next_sample) * interval);
    }
    double next_snapshot_time() const {
        return next_snapshot < snapshots.size() ? snapshots[next_snapshot] : t_end;
    }
    double next_event() const { return std::min(next_sample_time(), next_snapshot_time()); }
};

} // namespace

RunRecord integrate(const SpectralField& u0, const ModelParams& p, const StepperConfig& cfg, double t_end,
                    const ObserverSet& observers) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
    p.validate();
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    RunRecord rec;
    IntegrationState state{0.0, u0, cfg.method == StepMethod::ETDRK4 ? cfg.dt_fixed : cfg.dt_init, 0, 0};
    state.field.zero_mean();

    EventClock clock{t_end, observers.sample_interval, {}};
    for (double ts : observers.snapshot_times) {
        if (ts > 0.0 && ts <= t_end) clock.snapshots.push_back(ts);
    }
    std::sort(clock.snapshots.begin(), clock.snapshots.end());
    clock.snapshots.erase(std::unique(clock.snapshots.begin(), clock.snapshots.end()), clock.snapshots.end());

    auto take_sample = [&] {
        auto s = sample(state.field, state.t, p, state.dt);
        if (observers.on_sample) observers.on_sample(s, state.field);
        rec.samples.push_back(s);
    };
    auto take_snapshot = [&] {
        if (observers.on_snapshot) rec.snapshots.push_back({state.t, observers.on_snapshot(state.t, state.field)});
    };

    take_sample();
    for (double ts : observers.snapshot_times) {
        if (ts == 0.0) {
            take_snapshot();
            break;
        }
    }

    std::optional<AdaptiveErkStepper> erk;
    std::optional<Etdrk4Stepper> etd;
    if (cfg.method == StepMethod::AdaptiveERK) {
        erk.emplace(p, u0.grid(), cfg);
    } else {
        etd.emplace(p, u0.grid(), cfg);
    }

    // Fixed-step time is anchor + k dt rather than a running sum, so event
    // times stay a whole number of steps away.
    double anchor = 0.0;
    long steps_since_anchor = 0;
    try {
        while (state.t < t_end) {
            const double target = clock.next_event();
            const double remaining = target - state.t;
            bool lands = false;
            if (erk) {
                erk->step(state, remaining);
                lands = state.t >= target - 1e-12 * std::max(1.0, std::abs(target));
            } else if (remaining > cfg.dt_fixed * (1.0 + 1e-9)) {
                etd->step(state);
                state.t = anchor + static_cast<double>(++steps_since_anchor) * cfg.dt_fixed;
            } else {
                etd->step(state, std::abs(remaining - cfg.dt_fixed) <= 1e-9 * cfg.dt_fixed
                                     ? std::optional<double>{}
                                     : std::optional<double>{remaining});
                lands = true;
            }
            if (lands) {
                state.t = target;
                anchor = target;
                steps_since_anchor = 0;
            }
            state.field.zero_mean();

            if (state.t == clock.next_snapshot_time() && clock.next_snapshot < clock.snapshots.size()) {
                take_snapshot();
                ++clock.next_snapshot;
            }
            if (state.t == clock.next_sample_time()) {
                take_sample();
                if (clock.interval > 0.0) {
                    // Skip sample times swallowed by rounding at t_end.
                    while (static_cast<double>(clock.next_sample) * clock.interval <= state.t * (1.0 + 1e-12)) {
                        ++clock.next_sample;
                    }
                }
                if (state.t >= t_end) break;
            }
        }
        rec.status = RunStatus::Complete;
    } catch (const IntegrationAborted& e) {
        rec.status = RunStatus::Aborted;
        rec.message = e.what();
        if (observers.on_abort) rec.snapshots.push_back({state.t, observers.on_abort(state.t, state.field)});
    }

    rec.n_steps = state.n_steps;
    rec.n_rejects = state.n_rejects;
    rec.last_dt = state.dt;
    rec.final_field = state.field;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

} // namespace fks
