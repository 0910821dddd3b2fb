#include "fks/experiments.hpp"

#include "fks/snapshot.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef FKS_VERSION
#define FKS_VERSION "0.0.0"
#endif

namespace fks {

using ojson = nlohmann::ordered_json;

namespace {

ojson params_json(const ModelParams& p) {
    ojson j;
    j["variant"] = std::string(to_string(p.variant));
    j["eps"] = p.eps;
    j["gamma"] = p.gamma;
    j["delta"] = p.delta;
    return j;
}

ojson config_json(const RunConfig& c) {
    ojson j;
    j["params"] = params_json(c.params);
    j["grid_n"] = c.grid_n;
    ojson s;
    s["method"] = std::string(to_string(c.stepper.method));
    s["rel_tol"] = c.stepper.rel_tol;
    s["abs_tol"] = c.stepper.abs_tol;
    s["dt_init"] = c.stepper.dt_init;
    s["dt_min"] = c.stepper.dt_min;
    s["dt_fixed"] = c.stepper.dt_fixed;
    s["safety"] = c.stepper.safety;
    s["contour_points"] = c.stepper.contour_points;
    s["nonlinear"] = c.stepper.nonlinear;
    j["stepper"] = s;
    j["t_end"] = c.t_end;
    ojson ic;
    ic["kind"] = c.ic.to_spec();
    ic["amplitude"] = c.ic.amplitude;
    j["ic"] = ic;
    j["sample_interval"] = c.sample_interval;
    j["snapshot_times"] = c.snapshot_times;
    j["out_dir"] = c.out_dir.string();
    j["seed"] = c.seed;
    return j;
}

template <class T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

} // namespace

void RunConfig::validate() const {
    params.validate();
    stepper.validate();
    Grid grid(grid_n);
    (void)grid;
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite and >= 0");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("sample_interval must be positive");
    if (!(ic.amplitude > 0.0) || !std::isfinite(ic.amplitude)) {
        throw std::invalid_argument("initial amplitude must be positive");
    }
    for (double t : snapshot_times) {
        if (!(t >= 0.0)) throw std::invalid_argument("snapshot times must be >= 0");
    }
}

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

RunConfig config_from_json(std::string_view text) {
    RunConfig c;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        if (j.contains("params")) {
            const auto& p = j.at("params");
            if (p.contains("variant")) c.params.variant = parse_variant(p.at("variant").get<std::string>());
            read_opt(p, "eps", c.params.eps);
            read_opt(p, "gamma", c.params.gamma);
            read_opt(p, "delta", c.params.delta);
        }
        read_opt(j, "grid_n", c.grid_n);
        if (j.contains("stepper")) {
            const auto& s = j.at("stepper");
            if (s.contains("method")) c.stepper.method = parse_method(s.at("method").get<std::string>());
            read_opt(s, "rel_tol", c.stepper.rel_tol);
            read_opt(s, "abs_tol", c.stepper.abs_tol);
            read_opt(s, "dt_init", c.stepper.dt_init);
            read_opt(s, "dt_min", c.stepper.dt_min);
            read_opt(s, "dt_fixed", c.stepper.dt_fixed);
            read_opt(s, "safety", c.stepper.safety);
            read_opt(s, "contour_points", c.stepper.contour_points);
            read_opt(s, "nonlinear", c.stepper.nonlinear);
        }
        read_opt(j, "t_end", c.t_end);
        if (j.contains("ic")) {
            const auto& ic = j.at("ic");
            if (ic.contains("kind")) c.ic = InitialCondition::parse(ic.at("kind").get<std::string>());
            read_opt(ic, "amplitude", c.ic.amplitude);
        }
        read_opt(j, "sample_interval", c.sample_interval);
        read_opt(j, "snapshot_times", c.snapshot_times);
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
        read_opt(j, "seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad run configuration: ") + e.what());
    }
    return c;
}

std::string series_row(const DiagnosticsSample& s) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", format_double(s.t), format_double(s.l2),
                       format_double(s.linf), format_double(s.dx_linf), format_double(s.h_half),
                       format_double(s.mean), s.n_critical, format_double(s.rho), format_double(s.dt));
}

std::vector<DiagnosticsSample> read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kSeriesHeader) {
        throw std::runtime_error(path.string() + " does not start with the series header");
    }
    std::vector<DiagnosticsSample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 9) throw std::runtime_error("malformed row in " + path.string() + ": " + line);
        out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], static_cast<int>(v[6]), v[7], v[8]});
    }
    return out;
}

RunRecord run_experiment(const RunConfig& cfg) {
    cfg.validate();
    const Grid grid(cfg.grid_n);
    InitialCondition ic = cfg.ic;
    ic.seed = cfg.seed;
    double removed_mean = 0.0;
    const auto u0 = make_initial(ic, grid, &removed_mean);

    const bool persist = !cfg.out_dir.empty();
    if (persist) std::filesystem::create_directories(cfg.out_dir);

    ObserverSet obs;
    obs.sample_interval = cfg.sample_interval;
    obs.snapshot_times = cfg.snapshot_times;
    int snapshot_index = 0;
    if (persist) {
        obs.on_snapshot = [&](double t, const SpectralField& u) {
            const auto path = cfg.out_dir / fmt::format("snapshot_{:04d}.fks", snapshot_index++);
            write_snapshot(path, t, cfg.params, u);
            return path.string();
        };
        obs.on_abort = [&](double t, const SpectralField& u) {
            const auto path = cfg.out_dir / "snapshot_abort.fks";
            write_snapshot(path, t, cfg.params, u);
            return path.string();
        };
    }

    RunRecord rec = integrate(u0, cfg.params, cfg.stepper, cfg.t_end, obs);
    rec.config_echo = config_to_json(cfg);

    if (persist) {
        {
            std::ofstream csv(cfg.out_dir / "series.csv", std::ios::trunc);
            csv << kSeriesHeader << '\n';
            for (const auto& s : rec.samples) csv << series_row(s) << '\n';
            if (!csv) throw std::runtime_error("failed writing series.csv");
        }
        ojson manifest;
        manifest["library"] = "fks";
        manifest["version"] = FKS_VERSION;
        manifest["config"] = config_json(cfg);
        manifest["grid"] = {{"n", grid.n()}, {"dealias_cutoff", grid.dealias_cutoff()}};
        manifest["params"] = params_json(cfg.params);
        manifest["initial_mean_removed"] = removed_mean;
        manifest["status"] = std::string(to_string(rec.status));
        if (!rec.message.empty()) manifest["message"] = rec.message;
        manifest["n_steps"] = rec.n_steps;
        manifest["n_rejects"] = rec.n_rejects;
        manifest["last_dt"] = rec.last_dt;
        ojson files;
        files["series"] = "series.csv";
        ojson snaps = ojson::array();
        for (const auto& s : rec.snapshots) {
            snaps.push_back({{"t", s.t}, {"path", std::filesystem::path(s.path).filename().string()}});
        }
        files["snapshots"] = snaps;
        manifest["files"] = files;
        std::ofstream out(cfg.out_dir / "manifest.json", std::ios::trunc);
        out << manifest.dump(2) << '\n';
        if (!out) throw std::runtime_error("failed writing manifest.json");
    }
    return rec;
}

} // namespace fks
