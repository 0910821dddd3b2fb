#include "fks/experiments.hpp"
#include "fks/snapshot.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fks {

InitialCondition InitialCondition::parse(std::string_view spec) {
    InitialCondition ic;
    if (spec == "cos") {
        ic.kind = InitialKind::Cos;
    } else if (spec == "cos-gauss-sin") {
        ic.kind = InitialKind::CosGaussSin;
    } else if (spec == "random-h3") {
        ic.kind = InitialKind::RandomH3;
    } else if (spec.starts_with("snapshot:") && spec.size() > 9) {
        ic.kind = InitialKind::FromSnapshot;
        ic.snapshot = std::string(spec.substr(9));
    } else {
        throw std::invalid_argument("unknown initial condition '" + std::string(spec) + "'");
    }
    return ic;
}

std::string InitialCondition::to_spec() const {
    switch (kind) {
    case InitialKind::Cos: return "cos";
    case InitialKind::CosGaussSin: return "cos-gauss-sin";
    case InitialKind::RandomH3: return "random-h3";
    case InitialKind::FromSnapshot: return "snapshot:" + snapshot.string();
    }
    return "cos";
}

namespace {

SpectralField random_h3(const Grid& grid, std::uint64_t seed, double amplitude) {
    // mt19937_64 output is fully specified; the phase is built from raw
    // bits so the field does not depend on the standard library's
    // distribution implementations.
    std::mt19937_64 rng(seed);
    SpectralField f(grid);
    const int top = grid.dealias_cutoff();
    for (int xi = 1; xi <= top; ++xi) {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        f.set(xi, std::polar(std::pow(static_cast<double>(xi), -3.5), 2.0 * std::numbers::pi * unit));
    }
    const double peak = lp_norm(to_physical(f), std::numeric_limits<double>::infinity());
    f *= amplitude / peak;
    return f;
}

} // namespace

SpectralField make_initial(const InitialCondition& ic, const Grid& grid, double* removed_mean) {
    SpectralField f(grid);
    switch (ic.kind) {
    case InitialKind::Cos:
        f.set(1, 0.5 * ic.amplitude);
        break;
    case InitialKind::CosGaussSin: {
        const auto u = PhysicalField::sample(grid, [&](double x) {
            const double y = x < std::numbers::pi ? x : x - 2.0 * std::numbers::pi;
            return ic.amplitude * (std::cos(y) + std::exp(-y * y) * std::sin(y));
        });
        f = to_spectral(u);
        break;
    }
    case InitialKind::RandomH3:
        f = random_h3(grid, ic.seed, ic.amplitude);
        break;
    case InitialKind::FromSnapshot: {
        Snapshot s;
        try {
            s = read_snapshot(ic.snapshot);
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("unreadable initial snapshot: ") + e.what());
        }
        if (s.n != grid.n()) {
            throw std::invalid_argument("snapshot has n = " + std::to_string(s.n) + " but the grid has n = " +
                                        std::to_string(grid.n()));
        }
        f = to_spectral(PhysicalField(grid, s.values));
        break;
    }
    }
    if (removed_mean) *removed_mean = f.mean();
    f.zero_mean();
    return f;
}

} // namespace fks
