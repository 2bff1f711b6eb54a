#include <doctest.h>

#include <cmath>

#include "fpcavity/verify.hpp"

using namespace fpcav;

namespace {

int failures(const std::vector<IdentityReport>& rs) {
    int n = 0;
    for (const auto& r : rs) n += r.pass ? 0 : 1;
    return n;
}

}  // namespace

TEST_CASE("finalize follows the abs-or-rel rule") {
    IdentityReport r;
    r.tol_used = Tolerance{1e-10, 1e-6};
    r.lhs = {1.0, 2.0};
    r.rhs = {1.0, 2.0 + 1e-7};
    finalize(r);
    CHECK(r.abs_err == doctest::Approx(1e-7));
    CHECK(r.rel_err == doctest::Approx(5e-8));
    CHECK(r.pass);
    r.rhs = {1.0, 2.1};
    finalize(r);
    CHECK_FALSE(r.pass);
    r.lhs = {0.0};
    r.rhs = {0.0};
    finalize(r);
    CHECK(r.abs_err == 0.0);
    CHECK(r.rel_err == 0.0);
    CHECK(r.pass);
    r.lhs = {1.0, 2.0};
    CHECK_THROWS_AS(finalize(r), DomainError);
}

TEST_CASE("Bessel-hyperbolic identities at a few points") {
    const Tolerance tol{1e-12, 1e-8};
    for (auto [u, v] : {std::pair{0.9, 1.0}, {0.3, 0.25}, {1.7, 4.0}}) {
        const auto rs = check_bessel_hyperbolic(u, v, tol);
        REQUIRE(rs.size() == 4);
        CHECK(rs[0].id == CheckId::bessel_xi);
        CHECK(rs[0].rel_err < 1e-8);
        for (std::size_t i = 1; i < 4; ++i) CHECK(rs[i].rel_err < 1e-6);
        CHECK(rs[2].params.count("fd_step") == 1);
        CHECK(rs[3].params.at("fd_step") > 0.0);
    }
    // Symmetry point: both sides of the axial-derivative identity vanish.
    const auto mid = check_bessel_hyperbolic(1.0, 0.5, tol);
    CHECK(mid[3].abs_err < 1e-12);
    CHECK_THROWS_AS(check_bessel_hyperbolic(0.0, 1.0, tol), DomainError);
}

TEST_CASE("mode-sum, Lipschitz and Green checks") {
    const Tolerance tol{1e-12, 1e-8};
    const auto ms = check_mode_sum({{0.0, 1.0, 0}, {0.0, 2.0, 1}, {3.141592653589793, 0.3, 1}}, 1000000, tol);
    CHECK(failures(ms) == 0);
    CHECK(ms[1].abs_err == 0.0);

    const auto lp = check_lipschitz(2.0, 3.0, tol);
    REQUIRE(lp.size() == 2);
    CHECK(lp[0].abs_err < 1e-9);
    CHECK(lp[1].abs_err < 1e-9);
    CHECK(lp[1].rhs[0] == doctest::Approx(3.0 / std::pow(13.0, 1.5)));

    const auto g = check_green(0.5, 1.0, 1.0, tol);
    CHECK(g.abs_err < 1e-6);
    CHECK(g.pass);
    const auto same = check_green(0.7, 0.7, 1.0, tol);
    CHECK(same.abs_err == 0.0);
    const auto a = check_green(0.3, 1.2, 0.8, tol);
    // (u, u') -> (2 - u', 2 - u) swaps the roles of the two lattices, flipping the sign.
    const auto b = check_green(0.8, 1.7, 0.8, tol);
    CHECK(a.lhs[0] == doctest::Approx(-b.lhs[0]).epsilon(1e-9));
    CHECK(a.rhs[0] == doctest::Approx(-b.rhs[0]).epsilon(1e-9));
}

TEST_CASE("axial invariance and anisotropy") {
    const Tolerance tol{1e-12, 1e-8};
    const auto rs = check_axial_and_aniso({0.7}, {1.0, 2.0, 4.0, 8.0}, 10.0 * 3.141592653589793, tol);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].id == CheckId::axial_invariance);
    CHECK(rs[0].abs_err < 1e-12);
    CHECK(rs[1].id == CheckId::anisotropy_decay);
    CHECK(rs[1].pass);
    CHECK(rs[1].params.at("strictly_decreasing") == 1.0);
    CHECK(rs[2].id == CheckId::anisotropy_continuum);
    CHECK(std::abs(rs[2].lhs[0]) < 1e-12);

    // The hard cutoff decays too slowly to meet the 1e-2 ratio by L = 8.
    const auto sharp =
        check_axial_and_aniso({}, {1.0, 2.0, 4.0, 8.0}, 10.0 * 3.141592653589793, tol, CutoffShape::sharp);
    CHECK_FALSE(sharp[0].pass);
    CHECK(sharp[0].params.at("strictly_decreasing") == 1.0);
}

TEST_CASE("every kernel mutation is caught") {
    const Tolerance tol{1e-12, 1e-8};
    const auto seps = random_separations(42, 5);
    const std::vector<double> zs{0.2, 0.5};
    CHECK(failures(check_kernel_cancellation(seps, zs, tol)) == 0);
    for (auto m : {KernelMutation::flip_d_sign, KernelMutation::drop_direct_image, KernelMutation::drop_j2})
        CHECK(failures(check_kernel_cancellation(seps, zs, tol, mutated_kernels(m))) > 0);
}

TEST_CASE("random separations are seeded and in range") {
    const auto a = random_separations(123, 50);
    const auto b = random_separations(123, 50);
    const auto c = random_separations(124, 50);
    REQUIRE(a.size() == 50);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].u == b[i].u);
        CHECK(a[i].phi == b[i].phi);
        CHECK(a[i].u > 0.05);
        CHECK(a[i].u < 1.95);
        CHECK(a[i].v > 0.05);
        CHECK(a[i].v < 3.0);
        CHECK(a[i].phi >= 0.0);
        CHECK(a[i].phi < 2.0 * 3.141592653589793);
        differs = differs || a[i].u != c[i].u;
    }
    CHECK(differs);
}

TEST_CASE("run_all: empty grids give a vacuous pass with a warning") {
    VerifyConfig cfg;
    cfg.groups = {};
    const auto s = run_all(cfg);
    CHECK(s.checks.empty());
    CHECK(s.all_pass);
    REQUIRE(s.warnings.size() == 1);
    CHECK(s.warnings[0].find("no coverage") != std::string::npos);
}

TEST_CASE("run_all is reproducible and records failures instead of throwing") {
    VerifyConfig cfg;
    cfg.groups = {CheckGroup::cancellation, CheckGroup::lipschitz};
    cfg.random_separations = 4;
    cfg.self_z = {0.3};
    const auto a = run_all(cfg);
    const auto b = run_all(cfg);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].abs_err == b.checks[i].abs_err);
        CHECK(a.checks[i].rel_err == b.checks[i].rel_err);
    }
    CHECK(a.all_pass);

    cfg.self_z = {1.5};  // outside the cavity
    const auto bad = run_all(cfg);
    CHECK_FALSE(bad.all_pass);

    cfg.self_z = {0.3};
    cfg.kernels = mutated_kernels(KernelMutation::flip_d_sign);
    CHECK_FALSE(run_all(cfg).all_pass);
}

TEST_CASE("check ids round-trip through their names") {
    for (auto id : {CheckId::bessel_xi, CheckId::kernel_cancellation, CheckId::anisotropy_continuum})
        CHECK(check_id_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(check_id_from_string("nope"), DomainError);
}
