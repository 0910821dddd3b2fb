#include "commands.hpp"

#include <fks/diagnostics.hpp>
#include <fks/experiments.hpp>
#include <fks/fft.hpp>
#include <fks/kernel_oracle.hpp>
#include <fks/snapshot.hpp>
#include <fks/theory.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifndef FKS_VERSION
#define FKS_VERSION "0.0.0"
#endif

namespace fks::cli {

namespace {

using json = nlohmann::ordered_json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const json& j) { std::cout << j.dump() << '\n' << std::flush; }

json sample_json(const DiagnosticsSample& s) {
    return {{"t", s.t},           {"l2", num(s.l2)},         {"linf", num(s.linf)},
            {"dx_linf", num(s.dx_linf)}, {"h_half", num(s.h_half)}, {"mean", num(s.mean)},
            {"n_critical", s.n_critical}, {"rho", num(s.rho)},   {"dt", s.dt}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Flags shared by run and sweep. Values are applied over the config file
// (or the defaults) only when given on the command line.
struct RunFlags {
    std::string config;
    double gamma = 0, delta = 0, eps = 0, t_end = 0, amplitude = 0, sample_interval = 0;
    double rel_tol = 0, abs_tol = 0, dt = 0;
    int n = 0;
    std::string ic, method, variant, out;
    std::uint64_t seed = 0;
    std::vector<double> snapshot_times;
    std::vector<CLI::Option*> opts;
    CLI::Option *o_gamma, *o_delta, *o_eps, *o_t_end, *o_amp, *o_si, *o_rel, *o_abs, *o_dt, *o_n, *o_ic,
        *o_method, *o_variant, *o_out, *o_seed, *o_snaps;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config, "JSON run configuration; flags override its values");
        o_gamma = sub->add_option("--gamma", gamma, "order of the destabilising term");
        o_delta = sub->add_option("--delta", delta, "dissipation order is 1+delta");
        o_eps = sub->add_option("--eps", eps, "dissipation coefficient");
        o_variant = sub->add_option("--variant", variant, "fractional | ks");
        o_n = sub->add_option("--n", n, "grid points");
        o_t_end = sub->add_option("--t-end", t_end, "final time");
        o_ic = sub->add_option("--ic", ic, "cos | cos-gauss-sin | random-h3 | snapshot:<path>");
        o_amp = sub->add_option("--amplitude", amplitude, "initial amplitude");
        o_method = sub->add_option("--method", method, "erk | etdrk4")
                       ->check(CLI::IsMember({"erk", "etdrk4", "AdaptiveERK", "ETDRK4"}));
        o_dt = sub->add_option("--dt", dt, "fixed step for etdrk4 and initial step for erk");
        o_rel = sub->add_option("--rel-tol", rel_tol, "erk relative tolerance");
        o_abs = sub->add_option("--abs-tol", abs_tol, "erk absolute tolerance");
        o_si = sub->add_option("--sample-interval", sample_interval, "diagnostics sampling interval");
        o_snaps = sub->add_option("--snapshot-times", snapshot_times, "snapshot times")->delimiter(',');
        o_out = sub->add_option("--out", out, "output directory");
        o_seed = sub->add_option("--seed", seed, "seed for random initial data");
    }

    RunConfig merge(RunConfig cfg) const {
        if (!config.empty()) cfg = config_from_json(slurp(config));
        if (*o_variant) cfg.params.variant = parse_variant(variant);
        if (*o_gamma) cfg.params.gamma = gamma;
        if (*o_delta) cfg.params.delta = delta;
        if (*o_eps) cfg.params.eps = eps;
        if (*o_n) cfg.grid_n = n;
        if (*o_t_end) cfg.t_end = t_end;
        if (*o_ic) {
            const double a = cfg.ic.amplitude;
            cfg.ic = InitialCondition::parse(ic);
            cfg.ic.amplitude = a;
        }
        if (*o_amp) cfg.ic.amplitude = amplitude;
        if (*o_method) cfg.stepper.method = parse_method(method);
        if (*o_dt) {
            cfg.stepper.dt_fixed = dt;
            cfg.stepper.dt_init = dt;
        }
        if (*o_rel) cfg.stepper.rel_tol = rel_tol;
        if (*o_abs) cfg.stepper.abs_tol = abs_tol;
        if (*o_si) cfg.sample_interval = sample_interval;
        if (*o_snaps) cfg.snapshot_times = snapshot_times;
        if (*o_out) cfg.out_dir = out;
        if (*o_seed) cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

Action register_run(CLI::App& app) {
    auto* sub = app.add_subcommand("run", "integrate one configuration");
    auto flags = std::make_shared<RunFlags>();
    flags->attach(sub);
    return [flags] {
        RunConfig cfg;
        try {
            cfg = flags->merge(RunConfig{});
        } catch (const std::exception& e) {
            fmt::print(stderr, "fks run: {}\n", e.what());
            return int(kConfigError);
        }
        const auto t0 = std::chrono::steady_clock::now();
        const auto rec = run_experiment(cfg);
        fmt::print(stderr, "fks run: {} after {} steps ({} rejected), wall time {:.3f} s\n",
                   to_string(rec.status), rec.n_steps, rec.n_rejects, seconds_since(t0));
        if (!rec.message.empty()) fmt::print(stderr, "fks run: {}\n", rec.message);
        json out = rec.samples.empty() ? json::object() : sample_json(rec.samples.back());
        out["status"] = std::string(to_string(rec.status));
        emit(out);
        return rec.status == RunStatus::Complete ? int(kOk) : int(kAborted);
    };
}

Action register_sweep(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "scan one parameter and bracket the steady/chaotic transition");
    auto flags = std::make_shared<RunFlags>();
    flags->attach(sub);
    struct Extra {
        std::string axis;
        std::vector<double> values;
        double window_start = -1.0;
        double tol = 1e-3;
        unsigned threads = 0;
    };
    auto extra = std::make_shared<Extra>();
    sub->add_option("--axis", extra->axis, "gamma | delta | eps")->required();
    sub->add_option("--values", extra->values, "ascending comma-separated values")
        ->required()
        ->delimiter(',');
    sub->add_option("--window-start", extra->window_start, "start of the classification window");
    sub->add_option("--tol", extra->tol, "relative steadiness tolerance");
    sub->add_option("--threads", extra->threads, "worker threads (default FKS_THREADS)");
    return [flags, extra] {
        RunConfig base;
        base.grid_n = 1024;
        base.t_end = 300.0;
        base.sample_interval = 0.5;
        base.stepper.method = StepMethod::ETDRK4;
        base.stepper.dt_fixed = 0.001;
        SweepAxis axis{};
        SweepOptions opts;
        try {
            base = flags->merge(base);
            axis = parse_axis(extra->axis);
            if (extra->window_start >= 0.0) opts.window_start = extra->window_start;
            opts.tol_rel = extra->tol;
            opts.threads = extra->threads;
            if (extra->values.size() < 2) throw std::invalid_argument("a sweep needs at least two values");
            for (double v : extra->values) with_axis(base.params, axis, v).validate();
        } catch (const std::exception& e) {
            fmt::print(stderr, "fks sweep: {}\n", e.what());
            return int(kConfigError);
        }
        const auto t0 = std::chrono::steady_clock::now();
        const auto rec = sweep(base, axis, extra->values, opts);
        fmt::print(stderr, "fks sweep: {} points, wall time {:.3f} s\n", rec.points.size(), seconds_since(t0));
        auto out = json::parse(sweep_to_json(rec));
        if (const auto tr = detect_transition(rec, base.params)) {
            out["transition"] = {{"bracket", {tr->bracket.first, tr->bracket.second}}, {"k_star", tr->k_star}};
        } else {
            out["transition"] = nullptr;
        }
        emit(out);
        return int(kOk);
    };
}

Action register_diagnose(CLI::App& app) {
    auto* sub = app.add_subcommand("diagnose", "diagnostics of a snapshot file or a run directory");
    struct Flags {
        std::string path;
        double t_lo = -1.0, t_hi = -1.0, tol = 1e-3;
    };
    auto f = std::make_shared<Flags>();
    sub->add_option("path", f->path, "FKS1 snapshot or run directory containing series.csv")->required();
    sub->add_option("--t-lo", f->t_lo, "classification window start (run directories)");
    sub->add_option("--t-hi", f->t_hi, "classification window end (run directories)");
    sub->add_option("--tol", f->tol, "relative steadiness tolerance");
    return [f] {
        namespace fs = std::filesystem;
        if (fs::is_directory(f->path)) {
            const auto series = read_series(fs::path(f->path) / "series.csv");
            if (series.empty()) throw std::invalid_argument("series.csv has no samples");
            const double t_end = series.back().t;
            const double lo = f->t_lo >= 0.0 ? f->t_lo : 0.5 * t_end;
            const double hi = f->t_hi >= 0.0 ? f->t_hi : t_end;
            const auto spread = regime_spread(series, lo, hi);
            const auto regime = classify_regime(series, lo, hi, f->tol);
            emit({{"regime", std::string(to_string(regime))},
                  {"window", {lo, hi}},
                  {"spread_linf", spread.linf},
                  {"spread_l2", spread.l2},
                  {"samples", spread.samples},
                  {"final", sample_json(series.back())}});
            return int(kOk);
        }
        const auto snap = read_snapshot(f->path);
        const auto u = to_spectral(snap.physical());
        const auto fit = fit_analyticity_radius(u, default_fit_range(u.grid()));
        json out = sample_json(sample(u, snap.t, snap.params));
        out["fit"] = {{"rho", num(fit.rho)},
                      {"fitted", fit.fitted},
                      {"residual", num(fit.residual)},
                      {"poor", fit.poor},
                      {"used_modes", fit.used_modes}};
        out["params"] = {{"variant", std::string(to_string(snap.params.variant))},
                         {"eps", snap.params.eps},
                         {"gamma", snap.params.gamma},
                         {"delta", snap.params.delta}};
        emit(out);
        return int(kOk);
    };
}

Action register_theory(CLI::App& app) {
    auto* sub = app.add_subcommand("theory", "evaluate the closed-form a-priori constants");
    struct Flags {
        double gamma = 1, delta = 1, eps = 1, h3 = 0, linf = 0, M = 2, c = 1;
    };
    auto f = std::make_shared<Flags>();
    sub->add_option("--gamma", f->gamma)->required();
    sub->add_option("--delta", f->delta)->required();
    sub->add_option("--eps", f->eps)->required();
    sub->add_option("--u0-h3", f->h3, "||u0'''||_L2")->required();
    sub->add_option("--u0-linf", f->linf, "||u0||_inf")->required();
    sub->add_option("--M", f->M, "oscillation-count parameter, > 1");
    sub->add_option("--c", f->c, "generic constant of the strip estimate");
    return [f] {
        ModelParams p;
        p.gamma = f->gamma;
        p.delta = f->delta;
        p.eps = f->eps;
        TheoryConstants t;
        try {
            p.validate();
            t = theory_constants(f->M, f->h3, f->linf, p, f->c);
        } catch (const std::exception& e) {
            fmt::print(stderr, "fks theory: {}\n", e.what());
            return int(kConfigError);
        }
        emit({{"lambda", num(t.lambda)},
              {"c_analytic", num(t.c_analytic)},
              {"k_strip", num(t.k_strip)},
              {"t_analytic", num(t.t_analytic)},
              {"width", num(t.width)},
              {"e_script", num(t.e_script)},
              {"tau_m", num(t.tau_m)},
              {"osc_bound", num(t.osc_bound)},
              {"gronwall_rate", num(t.gronwall_rate)},
              {"k_star", num(k_star(p))}});
        return int(kOk);
    };
}

Action register_oracle_check(CLI::App& app) {
    auto* sub = app.add_subcommand("oracle-check", "compare the singular-integral and multiplier forms");
    struct Flags {
        double alpha = 1.0;
        int n = 256;
        KernelQuadratureConfig cfg;
    };
    auto f = std::make_shared<Flags>();
    sub->add_option("--alpha", f->alpha, "order in (0, 2)")->required();
    sub->add_option("--n", f->n, "grid points");
    sub->add_option("--quad-points", f->cfg.quad_points, "quadrature nodes per period");
    sub->add_option("--images", f->cfg.n_images, "periodic images summed explicitly");
    return [f] {
        OracleReport r;
        try {
            r = oracle_check(f->alpha, f->n, f->cfg);
        } catch (const std::invalid_argument& e) {
            fmt::print(stderr, "fks oracle-check: {}\n", e.what());
            return int(kConfigError);
        }
        const bool pass = r.max_rel_error < 1e-3;
        emit({{"alpha", r.alpha},
              {"n", r.n},
              {"quad_points", f->cfg.quad_points},
              {"cases", r.cases},
              {"max_rel_error", r.max_rel_error},
              {"pass", pass}});
        return pass ? int(kOk) : int(kCheckFailed);
    };
}

Action register_info(CLI::App& app) {
    app.add_subcommand("info", "library and environment information");
    return [] {
        emit({{"version", FKS_VERSION},
              {"fft_backend", fft_backend_version()},
              {"threads", default_threads()},
              {"series_header", std::string(kSeriesHeader)}});
        return int(kOk);
    };
}

} // namespace fks::cli
