#pragma once

// Instantaneous Coulomb interaction of point dipoles between two perfect
// mirrors, built from the image-dipole lattice. Kernels are dimensionless
// (L = 1 units); physical prefactors appear only in the energy assembly.

#include <functional>
#include <span>

#include "fpcavity/geometry.hpp"
#include "fpcavity/tolerance.hpp"

namespace fpcav {

/// Dimensionless separation: u = rho_z / L, v = |rho_perp| / L, and phi the
/// azimuth of rho_perp in the x-y plane.
struct Separation {
    double u = 0.0;
    double v = 0.0;
    double phi = 0.0;

    void validate() const;
};

enum class KernelKind { E_PLUS, E_MINUS, D_PLUS, D_MINUS, SELF };
enum class Sign { plus, minus };

struct KernelMatrix {
    Mat3 m = Mat3::Zero();
    KernelKind kind = KernelKind::E_PLUS;
};

/// Rotation by phi about the cavity axis.
Mat3 axial_rotation(double phi);

/// Conjugates a kernel given in the (v, 0, u) frame into the frame where the
/// transverse separation points along phi.
Mat3 rotate_kernel(const Mat3& frame_kernel, double phi);

/// Image-lattice dipole kernel
///
///   E+(rho) = sum_n (1/rho_n^3) [1 - 3 rho^_n rho^_n],  rho_n = (v, 0, 2n + u)
///
/// and E- = E+ R. The n = 0 term is the direct interaction. Truncated where
/// the tail bound drops below tol.abs_tol.
KernelMatrix kernel_e(Sign sign, const Separation& sep, const Tolerance& tol = {});

/// Same lattice sum with an explicit truncation |n| <= n_max (no tail logic).
Mat3 kernel_e_truncated(const Separation& sep, std::int64_t n_max);

/// Bracketed self-interaction matrix
///   (zeta(3)/4) diag(1, 1, -2) + xi(2 z/L, 0) diag(-1, -1, -2).
KernelMatrix self_energy_matrix(double z_over_L, const Tolerance& tol = {});

/// Kernel provider used by energy assembly and the identity suite, so tests
/// can substitute deliberately corrupted kernels.
using KernelFn = std::function<KernelMatrix(Sign, const Separation&, const Tolerance&)>;

/// (1/8 pi) sum_{A != B} d_A [E+(r_A - r_B) + E-((z_A + z_B) z^ + rho_perp)] d_B / L^3,
/// with epsilon_0 = 1.
double dipole_dipole_energy(std::span<const DipoleSpec> dipoles, const CavityFrame& frame,
                            const Tolerance& tol = {}, const KernelFn& kernel = {});

/// Independent oracle: pair energies of every real dipole with every image of
/// every other dipole, |n| <= n_images, using the free-space point-dipole
/// energy (1/4 pi) [d1.d2 - 3 (d1.r^)(d2.r^)] / r^3, halved for the ordered
/// double sum.
double brute_force_coulomb(std::span<const DipoleSpec> dipoles, const CavityFrame& frame, int n_images);

}  // namespace fpcav
