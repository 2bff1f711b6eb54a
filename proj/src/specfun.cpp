#include "fpcavity/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fpcav {

namespace {

constexpr double kPi = std::numbers::pi;

// J0, J1, J2 from the ascending series; used for small x where the alternating
// terms stay below ~4 in magnitude.
std::array<double, 3> bessel_series(double x) {
    std::array<double, 3> out{};
    const double q = -0.25 * x * x;
    for (int n = 0; n < 3; ++n) {
        double term = 1.0;
        for (int i = 1; i <= n; ++i) term *= 0.5 * x / i;
        double sum = term;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * (k + n));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        out[n] = sum;
    }
    return out;
}

// Miller's backward recurrence normalised with J0 + 2 sum J_{2k} = 1.
std::array<double, 3> bessel_miller(double x) {
    int start = static_cast<int>(1.3 * x) + 40;
    if (start % 2) ++start;
    double next = 0.0;   // J_{k+1}
    double cur = 1e-30;  // J_k
    double norm = 0.0;
    std::array<double, 3> low{};
    for (int k = start; k >= 1; --k) {
        const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
        next = cur;
        cur = prev;
        const int idx = k - 1;
        if (idx % 2 == 0 && idx > 0) norm += 2.0 * cur;
        if (idx <= 2) low[idx] = cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for (auto& v : low) v *= 1e-250;
        }
    }
    norm += cur;  // J_0 term
    for (auto& v : low) v /= norm;
    return low;
}

// Hankel expansion J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),
// chi = x - (nu/2 + 1/4) pi, written with cos x and sin x of the exact
// argument so large x does not lose the phase.
double bessel_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(a) > last) break;
        last = std::abs(a);
        // a_k / x^k with sign (-1)^{floor(k/2)}
        const double signed_term = ((k / 2) % 2 == 0) ? a : -a;
        if (k % 2 == 0)
            p += signed_term;
        else
            q += signed_term;
        if (last < 1e-17) break;
    }
    const double c = std::cos(x);
    const double s = std::sin(x);
    double cos_chi = 0.0;
    double sin_chi = 0.0;
    if (nu == 0) {
        cos_chi = (c + s) / std::numbers::sqrt2;
        sin_chi = (s - c) / std::numbers::sqrt2;
    } else {
        cos_chi = (s - c) / std::numbers::sqrt2;
        sin_chi = -(s + c) / std::numbers::sqrt2;
    }
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > 2) throw DomainError("bessel_j: order must be 0, 1 or 2");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: argument must be finite and >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x < 4.0) return bessel_series(x)[order];
    if (x < 25.0) return bessel_miller(x)[order];
    if (order < 2) return bessel_asymptotic(order, x);
    return 2.0 * bessel_asymptotic(1, x) / x - bessel_asymptotic(0, x);
}

double xi(double u, double v, const Tolerance& tol) {
    tol.validate();
    if (!std::isfinite(u) || !std::isfinite(v) || v < 0.0) throw DomainError("xi: need finite u and v >= 0");
    double ur = std::fmod(u, 2.0);
    if (ur < 0.0) ur += 2.0;
    if (v == 0.0 && ur == 0.0) throw DomainError("xi: diverges at v = 0 with u an even integer");

    const double v2 = v * v;
    auto term = [v2](double w) {
        const double r2 = w * w + v2;
        return 1.0 / (r2 * std::sqrt(r2));
    };
    // Integral of term(2t + u) over t from the midpoint w0 onwards.
    auto tail = [v2](double w0) {
        const double s = std::sqrt(w0 * w0 + v2);
        return 1.0 / (2.0 * s * (s + w0));
    };

    // The largest summand bounds the sum from below.
    const double nearest = std::min(ur, 2.0 - ur);
    const double lower = term(nearest);
    const double target = 0.5 * std::min(tol.abs_tol, tol.rel_tol * lower);

    // After the midpoint tail correction each side is off by at most
    // |f'(t0)|/24 <= 1/(4 w0^4); w0 must also clear v/2 so the summand is convex.
    std::int64_t n = 8;
    while (true) {
        const double w0 = 2.0 * n + 1.0 - ur;
        if (w0 > v && 2.0 / (4.0 * w0 * w0 * w0 * w0) <= target) break;
        n *= 2;
    }

    double sum = tail(2.0 * n + 1.0 + ur) + tail(2.0 * n + 1.0 - ur);
    for (std::int64_t k = n; k >= 1; --k) {
        sum += term(2.0 * k + ur);
        sum += term(2.0 * k - ur);
    }
    sum += term(ur);
    return sum;
}

double apery_zeta3() { return 1.2020569031595942854; }

double cosh_over_sinh(double a, double x) {
    if (x < 1.0) return std::cosh(a * x) / std::sinh(x);
    const double den = -std::expm1(-2.0 * x);
    return (std::exp((a - 1.0) * x) + std::exp((-a - 1.0) * x)) / den;
}

double sinh_over_sinh(double a, double x) {
    if (x < 1.0) return std::sinh(a * x) / std::sinh(x);
    const double den = -std::expm1(-2.0 * x);
    return (std::exp((a - 1.0) * x) - std::exp((-a - 1.0) * x)) / den;
}

void ModeSumArgs::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("mode sum: beta must be > 0");
    if (!std::isfinite(alpha)) throw DomainError("mode sum: alpha must be finite");
    if (m != 0 && m != 1) throw DomainError("mode sum: m must be 0 or 1 (the sum diverges for m >= 2)");
}

std::complex<double> hyperbolic_mode_sum(const ModeSumArgs& args) {
    args.validate();
    double alpha = std::fmod(args.alpha, 2.0 * kPi);
    if (alpha < 0.0) alpha += 2.0 * kPi;
    const double beta = args.beta;

    // c in (-pi, pi]; the closed forms are even (m = 0) or odd (m = 1) in c.
    const double c = alpha - kPi;
    const double den = -std::expm1(-2.0 * kPi * beta);
    const double grow = std::exp(beta * (std::abs(c) - kPi));
    const double shrink = std::exp(-beta * (std::abs(c) + kPi));

    if (args.m == 0) {
        // pi / (beta sinh(pi beta)) * cosh(beta (alpha - pi))
        return {kPi / beta * (grow + shrink) / den, 0.0};
    }
    if (alpha == 0.0) return {0.0, 0.0};
    // i pi sinh(beta (pi - alpha)) / sinh(pi beta)
    const double ratio = (grow - shrink) / den;
    return {0.0, -std::copysign(1.0, c) * kPi * ratio};
}

std::complex<double> direct_mode_sum(const ModeSumArgs& args, std::int64_t n_max) {
    args.validate();
    if (n_max < 0) throw DomainError("direct_mode_sum: n_max must be >= 0");
    const double b2 = args.beta * args.beta;
    double acc = 0.0;
    // Smallest terms first.
    for (std::int64_t n = n_max; n >= 1; --n) {
        const double dn = static_cast<double>(n);
        if (args.m == 0)
            acc += 2.0 * std::cos(args.alpha * dn) / (dn * dn + b2);
        else
            acc += 2.0 * std::sin(args.alpha * dn) * dn / (dn * dn + b2);
    }
    if (args.m == 0) return {acc + 1.0 / b2, 0.0};
    return {0.0, acc};
}

}  // namespace fpcav
