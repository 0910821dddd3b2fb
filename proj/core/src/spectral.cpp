#include "fks/spectral.hpp"

#include "fks/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fks {

namespace {

double max_abs(std::span<const Complex> c) {
    double m = 0.0;
    for (const auto& z : c) m = std::max(m, std::abs(z));
    return m;
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (a != b) throw std::invalid_argument("fields live on different grids");
}

} // namespace

PhysicalField::PhysicalField(const Grid& grid)
    : grid_(grid), values_(static_cast<size_t>(grid.n()), 0.0) {}

PhysicalField::PhysicalField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(grid.n())) {
        throw std::invalid_argument("physical field has " + std::to_string(values_.size()) +
                                    " values for a grid of " + std::to_string(grid.n()));
    }
}

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(static_cast<size_t>(grid.modes()), Complex{}) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> half)
    : grid_(grid), coeffs_(std::move(half)) {
    if (coeffs_.size() != static_cast<size_t>(grid.modes())) {
        throw std::invalid_argument("half spectrum has " + std::to_string(coeffs_.size()) +
                                    " entries, expected " + std::to_string(grid.modes()));
    }
}

SpectralField SpectralField::from_full(const Grid& grid, std::span<const Complex> full) {
    const int n = grid.n();
    if (full.size() != static_cast<size_t>(n)) {
        throw std::invalid_argument("full spectrum must have n entries");
    }
    // full[i] holds xi = i - n/2 + 1.
    auto at = [&](int xi) { return full[static_cast<size_t>(xi + n / 2 - 1)]; };
    const double tol = 1e-10 * std::max(max_abs(full), std::numeric_limits<double>::min());
    for (int xi = 1; xi < n / 2; ++xi) {
        if (std::abs(at(-xi) - std::conj(at(xi))) > tol) {
            throw std::invalid_argument("coefficients violate Hermitian symmetry at xi = " +
                                        std::to_string(xi));
        }
    }
    SpectralField f(grid);
    for (int xi = 0; xi <= n / 2; ++xi) f.coeffs_[static_cast<size_t>(xi)] = at(xi);
    return f;
}

Complex SpectralField::coeff(int xi) const {
    const int nyq = grid_.nyquist();
    if (xi <= -nyq || xi > nyq) {
        throw std::out_of_range("wavenumber " + std::to_string(xi) + " outside the grid");
    }
    return xi >= 0 ? coeffs_[static_cast<size_t>(xi)] : std::conj(coeffs_[static_cast<size_t>(-xi)]);
}

void SpectralField::set(int xi, Complex value) {
    const int nyq = grid_.nyquist();
    if (xi <= -nyq || xi > nyq) {
        throw std::out_of_range("wavenumber " + std::to_string(xi) + " outside the grid");
    }
    if (xi >= 0) {
        coeffs_[static_cast<size_t>(xi)] = value;
    } else {
        coeffs_[static_cast<size_t>(-xi)] = std::conj(value);
    }
}

std::vector<Complex> SpectralField::full() const {
    const int n = grid_.n();
    std::vector<Complex> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = coeff(i - n / 2 + 1);
    return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField to_spectral(const PhysicalField& u) {
    const auto values = u.values();
    for (size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j])) {
            throw std::invalid_argument("non-finite value " + std::to_string(values[j]) +
                                        " at index " + std::to_string(j));
        }
    }
    SpectralField f(u.grid());
    RealFft::of_size(u.grid().n())->forward(values, f.half());
    // r2c leaves round-off in the imaginary part of these two entries.
    f.half().front().imag(0.0);
    f.half().back().imag(0.0);
    return f;
}

PhysicalField to_physical(const SpectralField& f) {
    const auto c = f.half();
    const double tol = 1e-10 * max_abs(c);
    if (std::abs(c.front().imag()) > tol || std::abs(c.back().imag()) > tol) {
        throw std::invalid_argument(
            "spectrum is not Hermitian: mean or Nyquist coefficient is not real");
    }
    PhysicalField u(f.grid());
    RealFft::of_size(f.grid().n())->inverse(c, u.values());
    return u;
}

SpectralField frac_deriv(const SpectralField& f, double s) {
    if (!std::isfinite(s) || s < 0.0) {
        throw std::invalid_argument("fractional order must be finite and >= 0, got " +
                                    std::to_string(s));
    }
    SpectralField out = f;
    auto c = out.half();
    if (s == 0.0) return out;
    c[0] = 0.0;
    for (size_t xi = 1; xi < c.size(); ++xi) c[xi] *= std::pow(static_cast<double>(xi), s);
    return out;
}

SpectralField hilbert(const SpectralField& f) {
    SpectralField out = f;
    auto c = out.half();
    c.front() = 0.0;
    for (size_t xi = 1; xi + 1 < c.size(); ++xi) c[xi] *= Complex(0.0, -1.0);
    c.back() = 0.0;
    return out;
}

SpectralField derivative(const SpectralField& f, int order) {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    SpectralField out = f;
    auto c = out.half();
    // (i xi)^order = xi^order * i^order
    static constexpr Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = i_pow[order % 4];
    c.front() = 0.0;
    for (size_t xi = 1; xi < c.size(); ++xi) {
        c[xi] *= phase * std::pow(static_cast<double>(xi), order);
    }
    if (order % 2 == 1) c.back() = 0.0;
    return out;
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    auto c = out.half();
    const auto cutoff = static_cast<size_t>(f.grid().dealias_cutoff());
    for (size_t xi = cutoff + 1; xi < c.size(); ++xi) c[xi] = 0.0;
    return out;
}

double sobolev_norm(const SpectralField& f, double s) {
    if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("Sobolev order must be >= 0");
    const auto c = f.half();
    const size_t nyq = c.size() - 1;
    double sum = s == 0.0 ? std::norm(c[0]) : 0.0;
    for (size_t xi = 1; xi < nyq; ++xi) {
        sum += 2.0 * std::pow(static_cast<double>(xi), 2.0 * s) * std::norm(c[xi]);
    }
    sum += std::pow(static_cast<double>(nyq), 2.0 * s) * std::norm(c[nyq]);
    return std::sqrt(Grid::length() * sum);
}

double lp_norm(const PhysicalField& u, double p) {
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("L^p norm needs p >= 1");
    const auto v = u.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double x : v) sum += x * x;
    } else {
        for (double x : v) sum += std::pow(std::abs(x), p);
    }
    return std::pow(u.grid().spacing() * sum, 1.0 / p);
}

double evaluate(const SpectralField& f, double x) {
    const auto c = f.half();
    const size_t nyq = c.size() - 1;
    double sum = c[0].real();
    for (size_t xi = 1; xi < nyq; ++xi) {
        if (c[xi] == Complex{}) continue;
        sum += 2.0 * (c[xi] * std::polar(1.0, static_cast<double>(xi) * x)).real();
    }
    sum += c[nyq].real() * std::cos(static_cast<double>(nyq) * x);
    return sum;
}

} // namespace fks
