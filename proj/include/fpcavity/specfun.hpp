#pragma once

// Special functions shared by the cavity kernels: low-order cylindrical
// Bessel functions, the axial image lattice sum xi(u, v), Apery's constant
// and the two-sided hyperbolic mode sum.

#include <complex>
#include <cstdint>

#include "fpcavity/tolerance.hpp"

namespace fpcav {

/// J_order(x) for order in {0, 1, 2} and x >= 0.
///
/// Ascending series for x < 4, Miller backward recurrence for 4 <= x < 25,
/// Hankel asymptotic expansion beyond. J2 is taken from 2 J1(x)/x - J0(x)
/// on the asymptotic branch.
double bessel_j(int order, double x);

/// Axial image lattice sum
///
///     xi(u, v) = sum_{n in Z} ((2n + u)^2 + v^2)^(-3/2).
///
/// Periodic in u with period 2 and symmetric under u -> 2 - u. Diverges when
/// v = 0 and u is an even integer (the source point itself).
double xi(double u, double v, const Tolerance& tol = {});

/// Apery's constant zeta(3).
double apery_zeta3();

/// cosh(a x) / sinh(x) and sinh(a x) / sinh(x) for x > 0, |a| < 1, evaluated
/// without overflow for large x.
double cosh_over_sinh(double a, double x);
double sinh_over_sinh(double a, double x);

/// Arguments of the two-sided sum  sum_n exp(i alpha n) n^m / (n^2 + beta^2).
struct ModeSumArgs {
    double alpha = 0.0;
    double beta = 1.0;
    int m = 0;

    void validate() const;
};

/// Closed form of the two-sided mode sum obtained by contour summation.
/// alpha is reduced into [0, 2 pi) first; m = 1 at alpha = 0 is exactly zero.
std::complex<double> hyperbolic_mode_sum(const ModeSumArgs& args);

/// Symmetric truncation of the same sum over |n| <= n_max, accumulating the
/// +n and -n terms as a pair (needed for the conditionally convergent m = 1).
std::complex<double> direct_mode_sum(const ModeSumArgs& args, std::int64_t n_max);

}  // namespace fpcav
