#include "fpcavity/radiation.hpp"

#include <cmath>
#include <numbers>

#include "fpcavity/quadrature.hpp"
#include "fpcavity/specfun.hpp"

namespace fpcav {

namespace {

constexpr double kPi = std::numbers::pi;

void check_kernel_d_domain(const Separation& sep) {
    sep.validate();
    if (!(sep.u > 0.0 && sep.u < 2.0))
        throw DomainError("kernel_d: u must lie in (0, 2) for the hyperbolic form to converge");
}

}  // namespace

KernelMatrix kernel_d(Sign sign, const Separation& sep, const Tolerance& tol) {
    check_kernel_d_domain(sep);
    tol.validate();
    const double a = sep.u - 1.0;
    const double v = sep.v;
    const double rate = 1.0 - std::abs(a);

    auto even = [&](auto&& bessel_part) {
        return integrate_semi_infinite(
                   [&](double x) { return x * x * cosh_over_sinh(a, x) * bessel_part(x * v); }, rate, tol)
            .value;
    };
    const double j0 = even([](double t) { return bessel_j(0, t); });
    const double j2 = (v == 0.0) ? 0.0 : even([](double t) { return bessel_j(2, t); });
    double j1 = 0.0;
    if (v != 0.0 && a != 0.0) {
        j1 = integrate_semi_infinite(
                 [&](double x) { return x * x * sinh_over_sinh(a, x) * bessel_j(1, x * v); }, rate, tol)
                 .value;
    }

    Mat3 m = Mat3::Zero();
    m(0, 0) = kPi * (-j0 + j2);
    m(1, 1) = kPi * (-j0 - j2);
    m(2, 2) = 2.0 * kPi * j0;
    m(0, 2) = m(2, 0) = -2.0 * kPi * j1;
    if (v != 0.0) m = rotate_kernel(m, sep.phi);

    if (sign == Sign::minus) return {m * reflection_matrix(), KernelKind::D_MINUS};
    return {m, KernelKind::D_PLUS};
}

KernelMatrix kernel_d_spectral(const Separation& sep, double regulator_eps, const Tolerance& tol) {
    sep.validate();
    tol.validate();
    if (!(regulator_eps > 0.0) || !std::isfinite(regulator_eps))
        throw DomainError("kernel_d_spectral: regulator eps must be > 0");
    const double eps = regulator_eps;
    const double u = sep.u;
    const double v = sep.v;

    // Per-n transverse integrals:
    //   A = int k/K^2 (2 kn^2 + k^2) J0,  B = int k^3/K^2 J2,
    //   Z = int 2 k^3/K^2 J0,             X = int k^2 kn/K^2 J1,
    // each weighted by exp(-eps K).
    struct Terms {
        double a, b, z, x;
    };
    auto terms = [&](int n) {
        const double kn = kPi * n;
        auto damp = [&](double k) {
            const double K2 = kn * kn + k * k;
            return std::exp(-eps * std::sqrt(K2)) / K2;
        };
        auto q = [&](auto&& f) { return integrate_semi_infinite(f, eps, tol).value; };
        Terms t{};
        t.a = q([&](double k) { return k * (2.0 * kn * kn + k * k) * bessel_j(0, k * v) * damp(k); });
        t.z = q([&](double k) { return 2.0 * k * k * k * bessel_j(0, k * v) * damp(k); });
        if (v != 0.0) {
            t.b = q([&](double k) { return k * k * k * bessel_j(2, k * v) * damp(k); });
            if (n != 0) t.x = q([&](double k) { return k * k * kn * bessel_j(1, k * v) * damp(k); });
        }
        return t;
    };

    // Every |integrand| is below 2 k exp(-eps K), whose integral is
    // 2 exp(-eps kn) (eps kn + 1) / eps^2; stop once a pair of such bounds is negligible.
    auto bound = [&](int n) {
        const double ekn = eps * kPi * n;
        return 4.0 * kPi * std::exp(-ekn) * (ekn + 1.0) / (eps * eps);
    };

    double xx = 0.0, yy = 0.0, zz = 0.0, xz = 0.0;
    const Terms t0 = terms(0);
    xx = t0.a + t0.b;
    yy = t0.a - t0.b;
    zz = t0.z;
    for (int n = 1; bound(n) > tol.abs_tol; ++n) {
        if (n > 1000000) throw ConvergenceError("kernel_d_spectral: mode sum did not converge", xx, bound(n));
        const Terms t = terms(n);
        // e^{i pi n u} and e^{-i pi n u} pair into 2 cos; the odd xz factor -2i kn pairs into 4 sin.
        const double c = 2.0 * std::cos(kPi * n * u);
        xx += c * (t.a + t.b);
        yy += c * (t.a - t.b);
        zz += c * t.z;
        xz += 4.0 * std::sin(kPi * n * u) * t.x;
    }

    Mat3 m = Mat3::Zero();
    m(0, 0) = kPi * xx;
    m(1, 1) = kPi * yy;
    m(2, 2) = kPi * zz;
    m(0, 2) = m(2, 0) = kPi * xz;
    if (v != 0.0) m = rotate_kernel(m, sep.phi);
    return {m, KernelKind::D_PLUS};
}

KernelMatrix kernel_d_spectral_extrapolated(const Separation& sep, const std::vector<double>& eps_ladder,
                                            const Tolerance& tol) {
    if (eps_ladder.empty()) throw DomainError("kernel_d_spectral_extrapolated: empty eps ladder");
    std::vector<Mat3> p;
    p.reserve(eps_ladder.size());
    for (double e : eps_ladder) p.push_back(kernel_d_spectral(sep, e, tol).m);
    // Neville tableau evaluated at eps = 0.
    const std::size_t n = eps_ladder.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi_ = eps_ladder[i];
            const double xj = eps_ladder[i + level];
            if (xi_ == xj) throw DomainError("kernel_d_spectral_extrapolated: repeated eps");
            p[i] = (xi_ * p[i + 1] - xj * p[i]) / (xi_ - xj);
        }
    }
    return {p[0], KernelKind::D_PLUS};
}

KernelMatrix quadratic_self_term(double z_over_L, const Tolerance& tol) {
    if (!(z_over_L > 0.0 && z_over_L < 1.0)) throw DomainError("quadratic_self_term: need 0 < z/L < 1");
    return kernel_d(Sign::minus, {2.0 * z_over_L, 0.0, 0.0}, tol);
}

AnisotropyResult anisotropy_delta(const CavityFrame& frame, double cutoff, const Tolerance& tol, CutoffShape shape) {
    frame.validate();
    tol.validate();
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("anisotropy_delta: cutoff must be > 0");
    const double L = frame.length;
    const double R = cutoff * L / kPi;
    if (R < 1.0) throw DomainError("anisotropy_delta: no axial mode fits under the cutoff (K L / pi < 1)");
    const double R2 = R * R;

    // Inner quadrature tolerance scaled to the size of the individual terms (~R^2).
    Tolerance inner = tol;
    inner.abs_tol = tol.abs_tol * std::max(1.0, R2);

    auto g = [&](int n) {
        const double n2 = static_cast<double>(n) * n;
        auto bracket = [n2](double x) { return x * (2.0 * n2 - x * x) / (x * x + n2); };
        if (shape == CutoffShape::sharp) {
            const double top = std::sqrt(std::max(0.0, R2 - n2));
            return integrate(bracket, 0.0, top, inner, 4).value;
        }
        // exp(-(x^2 + n^2)/R^2) is below abs_tol * 1e-4 past x_max.
        const double x_max = R * std::sqrt(std::log(1e4 * std::max(1.0, R2) / tol.abs_tol));
        const double weight_n = std::exp(-n2 / R2);
        return integrate([&](double x) { return bracket(x) * weight_n * std::exp(-x * x / R2); }, 0.0, x_max, inner, 8)
            .value;
    };

    int n_max = 0;
    if (shape == CutoffShape::sharp) {
        n_max = static_cast<int>(std::floor(R));
    } else {
        // |g_n| <= (R^2/2 + 3/2 n^2 E1) e^{-n^2/R^2}-ish; cut where e^{-n^2/R^2} R^2 drops below abs_tol/10.
        n_max = static_cast<int>(std::ceil(R * std::sqrt(std::log(10.0 * std::max(1.0, R2) * R2 / tol.abs_tol))));
    }

    // Small terms first.
    double sum = 0.0;
    for (int n = n_max; n >= 1; --n) sum += 2.0 * g(n);
    sum += g(0);

    AnisotropyResult r;
    r.shape = shape;
    r.cavity_length = L;
    r.cutoff = cutoff;
    r.mode_sum = sum;
    r.delta = kPi * kPi * kPi / (L * L) * sum;
    const double K3 = cutoff * cutoff * cutoff;
    r.isotropic_scale = (shape == CutoffShape::sharp) ? 8.0 / 9.0 * K3 * L : 2.0 * std::sqrt(kPi) / 3.0 * K3 * L;
    return r;
}

double anisotropy_loglog_slope(const std::vector<AnisotropyResult>& results) {
    if (results.size() < 2) throw DomainError("anisotropy_loglog_slope: need at least two results");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : results) {
        const double x = std::log(r.cavity_length);
        const double y = std::log(r.normalized());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(results.size());
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw DomainError("anisotropy_loglog_slope: all cavity lengths coincide");
    return (n * sxy - sx * sy) / den;
}

}  // namespace fpcav
