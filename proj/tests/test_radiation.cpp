#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "fpcavity/radiation.hpp"
#include "fpcavity/specfun.hpp"

using namespace fpcav;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// Closed-form mode sums for the two cutoff weights, per axial index n and R = K L / pi.
double gaussian_mode_sum(double R) {
    const double R2 = R * R;
    double s = -0.5 * R2;
    for (int n = 1; n < 60 * R; ++n) {
        const double t = static_cast<double>(n) * n / R2;
        s += 2.0 * 0.5 * (-R2 * std::exp(-t) + 3.0 * n * n * boost::math::expint(1, t));
    }
    return s;
}

double sharp_mode_sum(double R) {
    const double R2 = R * R;
    double s = -0.5 * R2;
    for (int n = 1; n <= static_cast<int>(std::floor(R)); ++n) {
        const double n2 = static_cast<double>(n) * n;
        s += 2.0 * 0.5 * (-(R2 - n2) + 3.0 * n2 * std::log(R2 / n2));
    }
    return s;
}

}  // namespace

TEST_CASE("on-axis quadratic kernel is 2 pi xi diag(-1, -1, 2)") {
    for (double u : {0.2, 0.5, 1.0, 1.7}) {
        const Mat3 d = kernel_d(Sign::plus, {u, 0.0, 0.0}).m;
        const double x = xi(u, 0.0);
        CHECK(d(0, 0) == doctest::Approx(-2.0 * kPi * x).epsilon(1e-11));
        CHECK(d(1, 1) == doctest::Approx(-2.0 * kPi * x).epsilon(1e-11));
        CHECK(d(2, 2) == doctest::Approx(4.0 * kPi * x).epsilon(1e-11));
        CHECK(d(0, 2) == 0.0);
        CHECK(d(2, 0) == 0.0);
    }
}

TEST_CASE("quadratic and Coulomb kernels cancel: E+ = -D+ / (2 pi)") {
    for (const Separation& s : {Separation{0.5, 1.0, 0.0}, Separation{0.3, 0.7, 1.1}, Separation{1.9, 2.5, 4.0},
                                Separation{1.0, 0.05, 2.0}}) {
        const Mat3 e = kernel_e(Sign::plus, s).m;
        const Mat3 d = kernel_d(Sign::plus, s).m;
        CHECK(max_abs(e + d / (2.0 * kPi)) < 1e-9 * max_abs(e));
    }
}

TEST_CASE("off-axis coupling sign") {
    // E+_xz at (0.5, 1) is negative; the quadratic kernel must carry the opposite sign.
    const Mat3 d = kernel_d(Sign::plus, {0.5, 1.0, 0.0}).m;
    CHECK(d(0, 2) > 0.0);
    CHECK(d(0, 2) == doctest::Approx(2.0 * kPi * 0.66337107757040736).epsilon(1e-9));
}

TEST_CASE("mirror kernel and symmetry") {
    const Separation s{0.8, 0.6, 0.0};
    const Mat3 p = kernel_d(Sign::plus, s).m;
    const Mat3 m = kernel_d(Sign::minus, s).m;
    CHECK(max_abs(m - p * reflection_matrix()) == 0.0);
    CHECK(max_abs(p - p.transpose()) == 0.0);
}

TEST_CASE("quadratic kernel domain") {
    CHECK_THROWS_AS(kernel_d(Sign::plus, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kernel_d(Sign::plus, {2.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kernel_d(Sign::plus, {-0.5, 1.0, 0.0}), DomainError);
}

TEST_CASE("single-dipole quadratic term") {
    const Mat3 q = quadratic_self_term(0.25).m;
    const double x = xi(0.5, 0.0);
    CHECK(q(0, 0) == doctest::Approx(2.0 * kPi * x).epsilon(1e-11));
    CHECK(q(2, 2) == doctest::Approx(4.0 * kPi * x).epsilon(1e-11));
    CHECK(max_abs(quadratic_self_term(0.3).m - quadratic_self_term(0.7).m) < 1e-9);
    CHECK_THROWS_AS(quadratic_self_term(0.0), DomainError);
    CHECK_THROWS_AS(quadratic_self_term(1.0), DomainError);
}

TEST_CASE("regulated spectral form converges to the summed form") {
    Tolerance t{1e-9, 1e-9};
    const Separation s{0.6, 0.8, 0.0};
    const Mat3 ref = kernel_d(Sign::plus, s).m;
    const Mat3 ex = kernel_d_spectral_extrapolated(s, {0.1, 0.05, 0.025}, t).m;
    CHECK(max_abs(ex - ref) < 1e-3 * max_abs(ref));
    // A single regulated value is further off than the extrapolation.
    CHECK(max_abs(kernel_d_spectral(s, 0.1, t).m - ref) > max_abs(ex - ref));
}

TEST_CASE("spectral form on the axis") {
    Tolerance t{1e-9, 1e-9};
    for (double eps : {0.2, 0.1}) {
        const Mat3 d = kernel_d_spectral({0.7, 0.0, 0.0}, eps, t).m;
        CHECK(d(0, 2) == 0.0);
        CHECK(d(2, 0) == 0.0);
        CHECK(d(0, 0) == d(1, 1));
    }
    CHECK_THROWS_AS(kernel_d_spectral({0.7, 0.0, 0.0}, 0.0, t), DomainError);
}

TEST_CASE("anisotropy mode sums match their closed forms") {
    Tolerance t{1e-12, 1e-12};
    for (double R : {1.0, 3.5, 10.0, 40.0}) {
        const CavityFrame f{2.0};
        const double K = R * kPi / f.length;
        const AnisotropyResult g = anisotropy_delta(f, K, t, CutoffShape::gaussian);
        CHECK(g.mode_sum == doctest::Approx(gaussian_mode_sum(R)).epsilon(1e-10));
        CHECK(g.delta == doctest::Approx(std::pow(kPi, 3) / 4.0 * g.mode_sum).epsilon(1e-15));
        const AnisotropyResult s = anisotropy_delta(f, K, t, CutoffShape::sharp);
        CHECK(s.mode_sum == doctest::Approx(sharp_mode_sum(R)).epsilon(1e-10));
    }
}

TEST_CASE("smooth cutoff: the anisotropy tends to -3 pi zeta(3) / (2 L^2)") {
    const double zeta3 = boost::math::zeta(3.0);
    const AnisotropyResult a = anisotropy_delta(CavityFrame{3.0}, 40.0);
    CHECK(a.delta == doctest::Approx(-1.5 * kPi * zeta3 / 9.0).epsilon(1e-9));
    std::vector<AnisotropyResult> rs;
    for (double L : {1.0, 2.0, 4.0, 8.0}) rs.push_back(anisotropy_delta(CavityFrame{L}, 10.0 * kPi));
    for (std::size_t i = 1; i < rs.size(); ++i) CHECK(rs[i].normalized() < rs[i - 1].normalized());
    CHECK(rs.back().normalized() / rs.front().normalized() < 1e-2);
    CHECK(anisotropy_loglog_slope(rs) == doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("sharp cutoff decays only like 1/L^2 in normalized form") {
    std::vector<AnisotropyResult> rs;
    for (double L : {1.0, 2.0, 4.0, 8.0})
        rs.push_back(anisotropy_delta(CavityFrame{L}, 10.0 * kPi, {}, CutoffShape::sharp));
    for (std::size_t i = 1; i < rs.size(); ++i) CHECK(rs[i].normalized() < rs[i - 1].normalized());
    const double slope = anisotropy_loglog_slope(rs);
    CHECK(slope > -2.2);
    CHECK(slope < -1.8);
}

TEST_CASE("anisotropy n = 0 term and domain") {
    // A cutoff just above pi / L keeps n = 0 and n = +-1 only; n = 0 alone gives -R^2 / 2.
    const double R = 1.0;
    const AnisotropyResult s = anisotropy_delta(CavityFrame{1.0}, R * kPi, {}, CutoffShape::sharp);
    CHECK(s.mode_sum == doctest::Approx(-0.5 * R * R).epsilon(1e-12));
    CHECK_THROWS_AS(anisotropy_delta(CavityFrame{1.0}, 0.5 * kPi), DomainError);
    CHECK_THROWS_AS(anisotropy_delta(CavityFrame{1.0}, -1.0), DomainError);
}
