#pragma once

#include <cmath>

#include "fpcavity/errors.hpp"

namespace fpcav {

/// Accuracy request shared by lattice sums, quadratures and identity checks.
/// A result is acceptable when its error is within abs_tol OR within
/// rel_tol times the magnitude of the result.
struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !std::isfinite(abs_tol) || !std::isfinite(rel_tol))
            throw DomainError("tolerance: abs_tol and rel_tol must be positive and finite");
        if (max_subdivisions < 1)
            throw DomainError("tolerance: max_subdivisions must be >= 1");
    }

    bool accepts(double error, double magnitude) const {
        return error <= abs_tol || error <= rel_tol * std::abs(magnitude);
    }
};

}  // namespace fpcav
