#pragma once

#include "fks/spectral.hpp"

namespace fks {

struct KernelQuadratureConfig {
    /// Periodic images |k| <= n_images are summed explicitly; the remainder
    /// of the image series is replaced by its integral approximation.
    int n_images = 64;
    /// Quadrature nodes per period; pairs (eta, -eta) share a node, so
    /// quad_points/2 nodes cover (0, pi].
    int quad_points = 4096;
    /// Only used when pairing is disabled: the window |eta| < inner_exclusion
    /// is dropped from the integral.
    double inner_exclusion = 1e-3;
    bool symmetric_pairing = true;

    void validate() const;
};

/// Lambda^alpha u at the collocation points from the singular-integral form
///
///   Lambda^alpha u(x) = c_alpha sum_k P.V. int_T (u(x) - u(x - eta)) / |eta - 2 pi k|^{1+alpha} d eta,
///   c_alpha = Gamma(1+alpha) cos((1-alpha) pi/2) / pi,
///
/// evaluated by quadrature in real space. For alpha = 1 the image sum is
/// used in closed form, kernel 1/(4 sin^2(eta/2)). Off-grid values of u come
/// from its trigonometric interpolant. Rejects alpha outside (0, 2).
PhysicalField lambda_kernel(const PhysicalField& u, double alpha,
                            const KernelQuadratureConfig& cfg = {});

/// c_alpha above.
double kernel_constant(double alpha);

struct OracleReport {
    double alpha = 0.0;
    int n = 0;
    double max_rel_error = 0.0; ///< max over the battery of ||kernel - multiplier||_inf / ||multiplier||_inf
    int cases = 0;
};

/// Compares lambda_kernel with the Fourier multiplier on cos(kx), k = 1..8,
/// and one seeded random field band-limited to |xi| <= 16.
OracleReport oracle_check(double alpha, int n, const KernelQuadratureConfig& cfg = {});

} // namespace fks
