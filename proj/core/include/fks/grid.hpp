#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace fks {

/// Uniform collocation grid on the 2*pi torus.
///
/// Nodes are x_j = 2*pi*j/n for j = 0..n-1. Fields on the grid are stored
/// as half spectra (wavenumbers 0..n/2), so a grid of n points carries
/// n/2 + 1 complex coefficients.
class Grid {
public:
    /// n must be even and >= 8. The dealias cutoff defaults to floor(n/3)
    /// and must satisfy 0 < cutoff <= n/2 when overridden.
    explicit Grid(int n, std::optional<int> dealias_cutoff = std::nullopt);

    int n() const noexcept { return n_; }
    int modes() const noexcept { return n_ / 2 + 1; }
    int nyquist() const noexcept { return n_ / 2; }
    int dealias_cutoff() const noexcept { return cutoff_; }

    static constexpr double length() noexcept { return 2.0 * std::numbers::pi; }
    double spacing() const noexcept { return length() / n_; }
    double node(int j) const noexcept { return spacing() * j; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_;
    int cutoff_;
};

} // namespace fks
