#include "fks/dynamics.hpp"

#include "fks/error.hpp"
#include "fks/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fks {

std::string_view to_string(ModelVariant v) noexcept {
    switch (v) {
    case ModelVariant::Fractional: return "Fractional";
    case ModelVariant::ClassicKS: return "ClassicKS";
    }
    return "Fractional";
}

ModelVariant parse_variant(std::string_view s) {
    if (s == "Fractional" || s == "fractional") return ModelVariant::Fractional;
    if (s == "ClassicKS" || s == "classic-ks" || s == "ks") return ModelVariant::ClassicKS;
    throw std::invalid_argument("unknown model variant '" + std::string(s) + "'");
}

void ModelParams::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive and finite");
    }
    if (variant == ModelVariant::ClassicKS) return;
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("delta must satisfy 0 < delta <= 1, got " + std::to_string(delta));
    }
    if (!(gamma >= 0.0 && gamma < 1.0 + delta)) {
        throw std::invalid_argument("gamma must satisfy 0 <= gamma < 1 + delta, got gamma = " +
                                    std::to_string(gamma) + ", delta = " + std::to_string(delta));
    }
}

double linear_symbol(const ModelParams& p, int xi) {
    const double k = std::abs(static_cast<double>(xi));
    if (p.variant == ModelVariant::ClassicKS) return k * k - p.eps * k * k * k * k;
    if (xi == 0) return p.gamma == 0.0 ? 1.0 : 0.0;
    return std::pow(k, p.gamma) - p.eps * std::pow(k, 1.0 + p.delta);
}

double k_star(const ModelParams& p) {
    if (p.variant == ModelVariant::ClassicKS) return std::pow(p.eps, -0.5);
    return std::pow(p.eps, -1.0 / (1.0 + p.delta - p.gamma));
}

RhsEvaluator::RhsEvaluator(const ModelParams& p, const Grid& grid, bool include_nonlinear)
    : params_(p),
      grid_(grid),
      nonlinear_(include_nonlinear),
      symbol_(static_cast<size_t>(grid.modes())),
      product_n_(grid.n()) {
    p.validate();
    // The square of a field with modes <= K is alias-free on the cutoff band
    // only when 3K < n; otherwise evaluate it on a zero-padded grid.
    const int min_n = 3 * grid.dealias_cutoff() + 1;
    if (min_n > grid.n()) product_n_ = min_n + min_n % 2;
    work_spec_.resize(static_cast<size_t>(product_n_ / 2 + 1));
    work_phys_.resize(static_cast<size_t>(product_n_));
    for (int xi = 0; xi < grid.modes(); ++xi) symbol_[static_cast<size_t>(xi)] = linear_symbol(p, xi);
}

void RhsEvaluator::nonlinear(std::span<const Complex> u, std::span<Complex> out) {
    const size_t modes = symbol_.size();
    if (!nonlinear_) {
        std::fill(out.begin(), out.end(), Complex{});
        return;
    }
    const auto cutoff = static_cast<size_t>(grid_.dealias_cutoff());
    std::fill(work_spec_.begin(), work_spec_.end(), Complex{});
    for (size_t xi = 0; xi <= cutoff && xi < modes; ++xi) work_spec_[xi] = u[xi];

    const auto fft = RealFft::of_size(product_n_);
    fft->inverse(work_spec_, work_phys_);
    for (double& v : work_phys_) {
        v = 0.5 * v * v;
        if (!std::isfinite(v)) throw IntegrationAborted("non-finite value in u^2/2");
    }
    fft->forward(work_phys_, work_spec_);

    out[0] = 0.0;
    for (size_t xi = 1; xi < modes; ++xi) {
        out[xi] = xi <= cutoff ? Complex(0.0, -static_cast<double>(xi)) * work_spec_[xi] : Complex{};
    }
    out[modes - 1] = 0.0;
}

void RhsEvaluator::full(std::span<const Complex> u, std::span<Complex> out) {
    nonlinear(u, out);
    for (size_t xi = 0; xi < symbol_.size(); ++xi) out[xi] += symbol_[xi] * u[xi];
}

SpectralField nonlinear_term(const SpectralField& f) {
    // Parameters are irrelevant to the nonlinear part.
    RhsEvaluator eval(ModelParams{}, f.grid());
    SpectralField out(f.grid());
    eval.nonlinear(f.half(), out.half());
    return out;
}

SpectralField rhs(const ModelParams& p, const SpectralField& f) {
    RhsEvaluator eval(p, f.grid());
    SpectralField out(f.grid());
    eval.full(f.half(), out.half());
    return out;
}

} // namespace fks
