#pragma once

#include "fks/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace fks {

using Complex = std::complex<double>;

/// Collocation values u(x_j) of a real periodic function.
class PhysicalField {
public:
    explicit PhysicalField(const Grid& grid);
    /// Throws std::invalid_argument when values.size() != grid.n().
    PhysicalField(const Grid& grid, std::vector<double> values);

    template <class F>
    static PhysicalField sample(const Grid& grid, F&& f) {
        PhysicalField u(grid);
        for (int j = 0; j < grid.n(); ++j) u.values_[static_cast<size_t>(j)] = f(grid.node(j));
        return u;
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](int j) const { return values_[static_cast<size_t>(j)]; }
    double& operator[](int j) { return values_[static_cast<size_t>(j)]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Fourier coefficients of a real 2*pi-periodic function,
/// u(x) = sum_xi c(xi) exp(i xi x) for xi in {-n/2+1, ..., n/2}.
///
/// Only xi >= 0 is stored; c(-xi) is conj(c(xi)) by construction, so
/// Hermitian symmetry holds exactly. The xi = 0 and xi = n/2 entries must
/// have zero imaginary part for the field to be real.
class SpectralField {
public:
    explicit SpectralField(const Grid& grid);
    /// Half spectrum, wavenumbers 0..n/2.
    SpectralField(const Grid& grid, std::vector<Complex> half);

    /// Builds a field from the full coefficient array ordered
    /// xi = -n/2+1, ..., n/2. Throws std::invalid_argument when
    /// c(-xi) != conj(c(xi)) beyond 1e-10 relative to max |c|.
    static SpectralField from_full(const Grid& grid, std::span<const Complex> full);

    const Grid& grid() const noexcept { return grid_; }

    /// Coefficient at any wavenumber in {-n/2+1, ..., n/2}.
    Complex coeff(int xi) const;
    /// Sets c(xi) and implicitly c(-xi) = conj(value).
    void set(int xi, Complex value);

    std::span<const Complex> half() const noexcept { return coeffs_; }
    std::span<Complex> half() noexcept { return coeffs_; }

    /// Full array ordered xi = -n/2+1, ..., n/2.
    std::vector<Complex> full() const;

    double mean() const noexcept { return coeffs_.front().real(); }
    void zero_mean() noexcept { coeffs_.front() = 0.0; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Discrete Fourier analysis. Rejects non-finite samples, naming the index.
SpectralField to_spectral(const PhysicalField& u);

/// Synthesis. Rejects fields whose mean or Nyquist coefficient carries an
/// imaginary part beyond 1e-10 relative to max |c|, which cannot come from
/// a real function.
PhysicalField to_physical(const SpectralField& f);

/// Lambda^s: multiplies c(xi) by |xi|^s. At xi = 0 the multiplier is 1 for
/// s = 0 and 0 for s > 0. Rejects s < 0 or non-finite s.
SpectralField frac_deriv(const SpectralField& f, double s);

/// Periodic Hilbert transform, symbol -i sgn(xi). The mean and the Nyquist
/// mode map to zero.
SpectralField hilbert(const SpectralField& f);

/// d^order/dx^order, symbol (i xi)^order; the Nyquist mode is zeroed for
/// odd orders. Rejects order < 1.
SpectralField derivative(const SpectralField& f, int order);

/// Two-thirds rule: zeroes every |xi| > grid.dealias_cutoff().
SpectralField dealias(const SpectralField& f);

/// ||Lambda^s u||_{L2(T)} = sqrt(2*pi * sum_xi |xi|^{2s} |c(xi)|^2) over the
/// full spectrum (the mean counts only for s = 0).
double sobolev_norm(const SpectralField& f, double s);

/// L^p(T) norm by trapezoidal quadrature; p = infinity gives max |u_j|.
/// Rejects p < 1.
double lp_norm(const PhysicalField& u, double p);

/// Evaluates the trigonometric interpolant at an arbitrary point.
double evaluate(const SpectralField& f, double x);

} // namespace fks
