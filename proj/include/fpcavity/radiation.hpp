#pragma once

// Quadratic (gauge-transformation) kernels D(+/-) of the dipole-gauge
// Hamiltonian, in L = 1 units. The production path is the hyperbolic
// single-integral form; the Bessel-spectral double form is kept only as a
// regulated cross-check.

#include <vector>

#include "fpcavity/coulomb.hpp"

namespace fpcav {

/// D+(rho) = pi * int_0^inf dx x^2 / sinh(x) * M(x; u, v), with
///
///   M_xx = (-J0 + J2) cosh(x(u-1)),   M_yy = (-J0 - J2) cosh(x(u-1)),
///   M_zz = 2 J0 cosh(x(u-1)),         M_xz = M_zx = -2 J1 sinh(x(u-1)),
///
/// Bessel arguments x v. D- = D+ R. Requires 0 < u < 2 (the integrand decays
/// like exp(-(1 - |u - 1|) x)). At v = 0 the xz entries are exactly zero.
KernelMatrix kernel_d(Sign sign, const Separation& sep, const Tolerance& tol = {});

/// Spectral form: pi sum_n e^{i pi n u} int dk k/K^2 [...] with K^2 = (pi n)^2 + k^2,
/// summed two-sided over n, with the integrand damped by exp(-eps K).
/// Converges to kernel_d(plus, sep) as eps -> 0 (slowly; see
/// kernel_d_spectral_extrapolated).
KernelMatrix kernel_d_spectral(const Separation& sep, double regulator_eps, const Tolerance& tol = {});

/// Polynomial extrapolation to eps = 0 through the regulated values at each
/// eps in `eps_ladder` (Neville's scheme, entrywise).
KernelMatrix kernel_d_spectral_extrapolated(const Separation& sep, const std::vector<double>& eps_ladder,
                                            const Tolerance& tol = {});

/// Position-dependent single-dipole quadratic term D-(2 z z^).
KernelMatrix quadratic_self_term(double z_over_L, const Tolerance& tol = {});

/// Smooth Gaussian weight exp(-|k|^2 / K^2), or a hard cut at |k| = K.
enum class CutoffShape { gaussian, sharp };

struct AnisotropyResult {
    double delta = 0.0;            // D+_xx(0) - D+_zz(0)
    double cavity_length = 1.0;
    double cutoff = 1.0;           // K
    double isotropic_scale = 1.0;  // diagonal magnitude of D+(0) in the continuum, ~ K^3 L
    double mode_sum = 0.0;         // sum_n g_n, so that delta = pi^3 / L^2 * mode_sum
    CutoffShape shape = CutoffShape::gaussian;

    double normalized() const { return std::abs(delta) / isotropic_scale; }
};

/// Delta = (pi^3 / L^2) sum_n int_0^inf dx x (2 n^2 - x^2) / (x^2 + n^2) * w(x^2 + n^2),
/// with w the cutoff weight in units of R = K L / pi. Each n-term is a separate
/// quadrature. Requires K L / pi >= 1.
AnisotropyResult anisotropy_delta(const CavityFrame& frame, double cutoff, const Tolerance& tol = {},
                                  CutoffShape shape = CutoffShape::gaussian);

/// Least-squares slope of log(normalized |Delta|) against log(L).
double anisotropy_loglog_slope(const std::vector<AnisotropyResult>& results);

}  // namespace fpcav
