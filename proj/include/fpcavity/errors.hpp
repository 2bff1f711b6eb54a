#pragma once

#include <stdexcept>
#include <string>

namespace fpcav {

/// Raised when an argument lies outside the domain of a function
/// (coincident source points, dipole on a mirror, unsupported order, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative or adaptive procedure cannot reach the requested
/// tolerance. Carries the best available estimate and its error.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double best_estimate_;
    double achieved_error_;
};

}  // namespace fpcav
