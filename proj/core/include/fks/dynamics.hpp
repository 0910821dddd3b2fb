#pragma once

#include "fks/spectral.hpp"

#include <string>
#include <string_view>

namespace fks {

enum class ModelVariant { Fractional, ClassicKS };

std::string_view to_string(ModelVariant v) noexcept;
/// Accepts "Fractional"/"fractional" and "ClassicKS"/"classic-ks"/"ks".
ModelVariant parse_variant(std::string_view s);

/// Parameters of u_t + (u^2/2)_x = Lambda^gamma u - eps Lambda^{1+delta} u.
///
/// ClassicKS reads only eps and uses the symbol xi^2 - eps xi^4.
struct ModelParams {
    ModelVariant variant = ModelVariant::Fractional;
    double eps = 0.01;
    double gamma = 1.0;
    double delta = 1.0;

    static ModelParams fractional(double eps, double gamma, double delta) {
        return {ModelVariant::Fractional, eps, gamma, delta};
    }
    static ModelParams classic_ks(double eps) { return {ModelVariant::ClassicKS, eps, 2.0, 1.0}; }

    /// Throws std::invalid_argument unless eps > 0 and, for the fractional
    /// model, 0 < delta <= 1 and 0 <= gamma < 1 + delta.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Linear growth rate sigma(xi) = |xi|^gamma - eps |xi|^{1+delta}.
/// sigma(0) is 1 when gamma = 0 (Lambda^0 is the identity) and 0 otherwise.
double linear_symbol(const ModelParams& p, int xi);

/// Edge of the unstable band, eps^{-1/(1+delta-gamma)}; eps^{-1/2} for
/// ClassicKS.
double k_star(const ModelParams& p);

/// -(u^2/2)_x with the product formed on the dealiased field and the
/// result truncated again at the dealias cutoff (a Galerkin truncation).
SpectralField nonlinear_term(const SpectralField& f);

/// sigma(xi) c(xi) + nonlinear_term. The mean coefficient of the result is
/// zero whenever gamma > 0.
SpectralField rhs(const ModelParams& p, const SpectralField& f);

/// Allocation-free evaluation of the semi-discrete right-hand side on raw
/// half spectra, reused by the time steppers.
class RhsEvaluator {
public:
    RhsEvaluator(const ModelParams& p, const Grid& grid, bool include_nonlinear = true);

    const Grid& grid() const noexcept { return grid_; }
    const ModelParams& params() const noexcept { return params_; }
    bool includes_nonlinear() const noexcept { return nonlinear_; }

    /// sigma(xi) for xi = 0..n/2.
    std::span<const double> symbol() const noexcept { return symbol_; }

    /// out = -(u^2/2)_x (dealiased), or zero when the nonlinearity is off.
    /// Throws IntegrationAborted when u^2 overflows or produces NaN.
    void nonlinear(std::span<const Complex> u, std::span<Complex> out);

    /// out = sigma * u + nonlinear(u).
    void full(std::span<const Complex> u, std::span<Complex> out);

private:
    ModelParams params_;
    Grid grid_;
    bool nonlinear_;
    std::vector<double> symbol_;
    int product_n_;
    std::vector<Complex> work_spec_;
    std::vector<double> work_phys_;
};

} // namespace fks
