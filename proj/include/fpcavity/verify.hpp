#pragma once

// Identity suite: every analytic relation the kernels rely on is checked by
// evaluating both sides through independent code paths (lattice sums vs
// quadratures vs closed forms).

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fpcavity/coulomb.hpp"
#include "fpcavity/radiation.hpp"
#include "fpcavity/specfun.hpp"

namespace fpcav {

enum class CheckId {
    bessel_xi,                 // int x c(x) J1(xv) = v xi
    bessel_xi_sum,             // int x^2 c(x) (J0 + J2)(xv) = 2 xi
    bessel_xi_diff,            // int x^2 c(x) (J0 - J2)(xv) = (2 + 2 v d/dv) xi
    bessel_xi_axial,           // int x^2 s(x) J1(xv) = v d/du xi
    kernel_cancellation,       // E+ + D+ / (2 pi) = 0
    self_energy_cancellation,  // image self energy xi part + D-(2z) / (16 pi^2) = 0
    mode_sum,                  // direct two-sided sum vs hyperbolic closed form
    lipschitz_j0,
    lipschitz_j1,
    green_difference,          // paired Coulomb lattice sum vs hyperbolic J0 integral
    axial_invariance,          // xz entries of D(+/-) vanish on the axis
    anisotropy_decay,          // normalized |Delta| decreasing in L
    anisotropy_continuum,      // int_{-1}^{1} (3t^2 - 1) dt = 0
};

std::string_view to_string(CheckId id);
CheckId check_id_from_string(std::string_view s);

struct IdentityReport {
    CheckId id = CheckId::bessel_xi;
    std::map<std::string, double> params;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
    Tolerance tol_used;  // pass threshold: abs_err <= abs_tol or rel_err <= rel_tol
    std::string note;
};

/// Fills abs_err = max |lhs - rhs|, rel_err = abs_err / scale and pass.
/// scale <= 0 selects max(max|lhs|, max|rhs|). A zero scale with zero error
/// gives rel_err = 0.
void finalize(IdentityReport& r, double scale = 0.0);

/// Kernels consumed by the cancellation checks; replaceable for mutation tests.
struct KernelSet {
    KernelFn e = kernel_e;
    KernelFn d = kernel_d;
};

enum class KernelMutation { flip_d_sign, drop_direct_image, drop_j2 };
KernelSet mutated_kernels(KernelMutation m);

/// Four reports (bessel_xi, bessel_xi_sum, bessel_xi_diff, bessel_xi_axial).
/// Derivatives of xi use a five-point central difference whose step is
/// halved until the step-halving error estimate falls below the target;
/// the step and the estimate are recorded in params.
std::vector<IdentityReport> check_bessel_hyperbolic(double u, double v, const Tolerance& tol);

std::vector<IdentityReport> check_kernel_cancellation(const std::vector<Separation>& seps,
                                                      const std::vector<double>& z_over_L, const Tolerance& tol,
                                                      const KernelSet& kernels = {});

std::vector<IdentityReport> check_mode_sum(const std::vector<ModeSumArgs>& grid, std::int64_t n_max,
                                           const Tolerance& tol);

std::vector<IdentityReport> check_lipschitz(double u, double v, const Tolerance& tol);

IdentityReport check_green(double u, double u_prime, double v, const Tolerance& tol);

std::vector<IdentityReport> check_axial_and_aniso(const std::vector<double>& u_samples,
                                                  const std::vector<double>& L_samples, double cutoff,
                                                  const Tolerance& tol,
                                                  CutoffShape shape = CutoffShape::gaussian);

enum class CheckGroup { bessel, cancellation, modesum, lipschitz, green, aniso };

struct GreenTriple {
    double u, u_prime, v;
};

struct VerifyConfig {
    std::vector<CheckGroup> groups = {CheckGroup::bessel, CheckGroup::cancellation, CheckGroup::modesum,
                                      CheckGroup::lipschitz, CheckGroup::green, CheckGroup::aniso};
    std::uint64_t seed = 42;
    Tolerance tol{1e-12, 1e-8};

    std::vector<double> bessel_u = {0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9};
    std::vector<double> bessel_v = {0.25, 0.5, 1.0, 2.0, 4.0};

    int random_separations = 20;
    std::vector<double> self_z = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    KernelSet kernels;

    std::vector<double> mode_alpha = {0.0, 0.5, 3.141592653589793};
    std::vector<double> mode_beta = {0.3, 1.0, 3.0};
    std::vector<int> mode_m = {0, 1};
    std::int64_t mode_n_max = 1000000;

    std::vector<double> lipschitz_u = {1.0, 2.0};
    std::vector<double> lipschitz_v = {0.0, 1.0, 3.0};

    std::vector<GreenTriple> green = {{0.5, 1.0, 1.0}, {0.3, 1.7, 0.5}, {1.2, 0.8, 2.0}};

    std::vector<double> axial_u = {0.3, 0.7, 1.0, 1.5};
    std::vector<double> aniso_L = {1.0, 2.0, 4.0, 8.0};
    double aniso_cutoff = 10.0 * 3.141592653589793;
    CutoffShape aniso_shape = CutoffShape::gaussian;
};

struct SuiteReport {
    std::string suite = "all";
    std::uint64_t seed = 0;
    bool all_pass = true;
    std::vector<IdentityReport> checks;
    std::vector<std::string> warnings;
};

/// Seeded separations with u in (0.05, 1.95), v in (0.05, 3), phi in [0, 2 pi).
std::vector<Separation> random_separations(std::uint64_t seed, int count);

/// Runs every enabled group. Exceptions inside a check become failed
/// reports; nothing is thrown. No reports at all yields a vacuous pass plus
/// a "no coverage" warning.
SuiteReport run_all(const VerifyConfig& config);

}  // namespace fpcav
