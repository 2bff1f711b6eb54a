#pragma once

#include <functional>

#include "fpcavity/tolerance.hpp"

namespace fpcav {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error, truncation included
    double upper_limit = 0.0; // truncation point used for semi-infinite ranges
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// `initial_panels` pre-splits the interval (useful for oscillatory integrands).
/// Throws ConvergenceError once tol.max_subdivisions panels are exhausted.
QuadratureResult integrate(const Integrand& f, double a, double b, const Tolerance& tol,
                           int initial_panels = 1);

/// Integral over (0, inf) of an integrand decaying at least like
/// exp(-decay_rate * x). The range is truncated where the tail estimate drops
/// below tol.abs_tol / 2; the finite part is integrated adaptively on unit-width
/// starting panels.
QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_rate, const Tolerance& tol);

}  // namespace fpcav
