#include "fks/experiments.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace fks {

std::string_view to_string(SweepAxis a) noexcept {
    switch (a) {
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::Delta: return "delta";
    case SweepAxis::Eps: return "eps";
    }
    return "gamma";
}

SweepAxis parse_axis(std::string_view s) {
    if (s == "gamma") return SweepAxis::Gamma;
    if (s == "delta") return SweepAxis::Delta;
    if (s == "eps") return SweepAxis::Eps;
    throw std::invalid_argument("unknown sweep axis '" + std::string(s) + "'");
}

ModelParams with_axis(ModelParams p, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::Gamma: p.gamma = value; break;
    case SweepAxis::Delta: p.delta = value; break;
    case SweepAxis::Eps: p.eps = value; break;
    }
    return p;
}

unsigned default_threads() {
    if (const char* env = std::getenv("FKS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

SweepPoint run_point(const RunConfig& cfg, double value, double window_start, double tol_rel) {
    SweepPoint pt;
    pt.value = value;
    pt.k_star = k_star(cfg.params);
    try {
        const auto rec = run_experiment(cfg);
        if (!rec.samples.empty()) {
            pt.final_l2 = rec.samples.back().l2;
            pt.final_linf = rec.samples.back().linf;
        }
        if (rec.status != RunStatus::Complete) {
            pt.status = "aborted: " + rec.message;
            return pt;
        }
        pt.spread = regime_spread(rec.samples, window_start, cfg.t_end);
        pt.regime = classify_regime(rec.samples, window_start, cfg.t_end, tol_rel);
        pt.status = "complete";
    } catch (const std::exception& e) {
        pt.status = std::string("failed: ") + e.what();
    }
    return pt;
}

} // namespace

SweepRecord sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                  const SweepOptions& opts) {
    if (values.size() < 2) throw std::invalid_argument("a sweep needs at least two values");
    if (!std::is_sorted(values.begin(), values.end()) ||
        std::adjacent_find(values.begin(), values.end()) != values.end()) {
        throw std::invalid_argument("sweep values must be strictly ascending");
    }
    std::vector<RunConfig> configs;
    for (size_t i = 0; i < values.size(); ++i) {
        RunConfig c = base;
        c.params = with_axis(base.params, axis, values[i]);
        if (!base.out_dir.empty()) c.out_dir = base.out_dir / fmt::format("point_{}", i);
        c.validate();
        configs.push_back(std::move(c));
    }
    const double window_start = opts.window_start.value_or(0.5 * base.t_end);

    SweepRecord rec;
    rec.axis = axis;
    rec.points.resize(values.size());

    std::ofstream progress;
    if (!base.out_dir.empty()) {
        std::filesystem::create_directories(base.out_dir);
        progress.open(base.out_dir / "progress.log", std::ios::app);
    }
    std::mutex progress_mutex;
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (size_t i = next++; i < values.size(); i = next++) {
            rec.points[i] = run_point(configs[i], values[i], window_start, opts.tol_rel);
            if (progress.is_open()) {
                const auto& pt = rec.points[i];
                std::lock_guard lock(progress_mutex);
                progress << fmt::format("point {} {}={} {} {}\n", i, to_string(axis), pt.value,
                                        pt.regime ? to_string(*pt.regime) : "-", pt.status)
                         << std::flush;
            }
        }
    };

    const unsigned threads =
        std::min<unsigned>(opts.threads ? opts.threads : default_threads(), static_cast<unsigned>(values.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    rec.transition_bracket = transition_bracket(rec.points);
    if (!base.out_dir.empty()) {
        std::ofstream out(base.out_dir / "sweep.json", std::ios::trunc);
        out << sweep_to_json(rec) << '\n';
    }
    return rec;
}

std::optional<std::pair<double, double>> transition_bracket(const std::vector<SweepPoint>& points) {
    std::vector<const SweepPoint*> ok;
    for (const auto& p : points) {
        if (p.regime) ok.push_back(&p);
    }
    std::optional<std::pair<double, double>> bracket;
    int flips = 0;
    for (size_t i = 1; i < ok.size(); ++i) {
        if (*ok[i]->regime != *ok[i - 1]->regime) {
            ++flips;
            bracket = std::pair{ok[i - 1]->value, ok[i]->value};
        }
    }
    if (flips != 1) return std::nullopt;
    return bracket;
}

std::optional<Transition> detect_transition(const SweepRecord& s, const ModelParams& base) {
    const auto br = s.transition_bracket ? s.transition_bracket : transition_bracket(s.points);
    if (!br) return std::nullopt;
    Transition t;
    t.bracket = *br;
    t.k_star = k_star(with_axis(base, s.axis, 0.5 * (br->first + br->second)));
    return t;
}

std::string sweep_to_json(const SweepRecord& s) {
    nlohmann::ordered_json j;
    j["axis"] = std::string(to_string(s.axis));
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : s.points) {
        nlohmann::ordered_json e;
        e["value"] = p.value;
        e["regime"] = p.regime ? nlohmann::ordered_json(std::string(to_string(*p.regime))) : nullptr;
        e["k_star"] = p.k_star;
        e["final_l2"] = p.final_l2;
        e["final_linf"] = p.final_linf;
        e["spread_linf"] = p.spread.linf;
        e["spread_l2"] = p.spread.l2;
        e["window_samples"] = p.spread.samples;
        e["status"] = p.status;
        pts.push_back(e);
    }
    j["points"] = pts;
    if (s.transition_bracket) {
        j["transition_bracket"] = {s.transition_bracket->first, s.transition_bracket->second};
    } else {
        j["transition_bracket"] = nullptr;
    }
    return j.dump(2);
}

} // namespace fks
