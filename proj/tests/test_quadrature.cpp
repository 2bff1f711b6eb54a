#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "fpcavity/quadrature.hpp"

using namespace fpcav;

TEST_CASE("single Kronrod panel integrates polynomials up to degree 22 exactly") {
    Tolerance t{1e-14, 1e-14};
    for (int deg = 0; deg <= 22; ++deg) {
        const auto r = integrate([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0, t);
        CHECK(r.value == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-14));
    }
}

TEST_CASE("semi-infinite integrals") {
    Tolerance t{1e-13, 1e-13};
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 1.0, t).value ==
          doctest::Approx(1.0).epsilon(1e-13));
    // int_0^inf x^2 e^{-x/5} = 2 * 125
    CHECK(integrate_semi_infinite([](double x) { return x * x * std::exp(-0.2 * x); }, 0.2, t).value ==
          doctest::Approx(250.0).epsilon(1e-12));
    // Lipschitz integral with an oscillating kernel: 1 / sqrt(u^2 + v^2)
    const double v = 5.0;
    const auto r = integrate_semi_infinite(
        [v](double x) { return std::exp(-0.5 * x) * boost::math::cyl_bessel_j(0, v * x); }, 0.5, t);
    CHECK(r.value == doctest::Approx(1.0 / std::hypot(0.5, v)).epsilon(1e-11));
    CHECK(r.error < 1e-10);
    CHECK(r.upper_limit > 0.0);
}

TEST_CASE("reversed limits flip the sign") {
    Tolerance t{1e-14, 1e-14};
    const auto a = integrate([](double x) { return std::sin(x); }, 0.0, 2.0, t);
    const auto b = integrate([](double x) { return std::sin(x); }, 2.0, 0.0, t);
    CHECK(a.value == doctest::Approx(-b.value).epsilon(1e-15));
}

TEST_CASE("convergence failure carries the best estimate") {
    Tolerance t{1e-15, 1e-15, 3};
    try {
        integrate([](double x) { return std::sin(40.0 * x) / std::sqrt(x + 1e-9); }, 0.0, 10.0, t);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.achieved_error() > 0.0);
    }
}

TEST_CASE("argument validation") {
    Tolerance t;
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, t), DomainError);
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, INFINITY, t), DomainError);
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, Tolerance{-1.0, 1e-3}), DomainError);
}
