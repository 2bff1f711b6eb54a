#pragma once

// Perfect Fabry-Perot geometry: mirrors at z = 0 and z = L, TE/TM mode
// functions, the dispersion relation and the image-dipole lattice.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fpcavity/errors.hpp"

namespace fpcav {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;

struct CavityFrame {
    double length = 1.0;

    void validate() const;
};

/// k = k_n z^ + k_perp with k_n = n pi / L.
struct WaveVector {
    int n = 0;
    Eigen::Vector2d k_perp = Eigen::Vector2d::Zero();

    double axial(const CavityFrame& frame) const;
    double modulus(const CavityFrame& frame) const;
};

struct DipoleSpec {
    Vec3 position = Vec3::Zero();
    Vec3 moment = Vec3::Zero();
};

enum class ModeKind { TE, TM };

/// Bare mode function psi^E or psi^M (no normalisation constant).
/// For k_perp = 0 the transverse unit vector is taken along x.
/// TE requires n >= 1; TM requires |k| > 0.
CVec3 mode_fn(ModeKind kind, const WaveVector& k, const Vec3& r, const CavityFrame& frame);

/// One travelling-wave component amplitude * exp(i wavevector . r).
struct PlaneWave {
    Vec3 wavevector;
    CVec3 amplitude;
};

/// The standing mode written as two travelling waves with axial wave numbers
/// +k_n and -k_n. Each component is transverse (wavevector . amplitude = 0).
std::array<PlaneWave, 2> plane_wave_decomposition(ModeKind kind, const WaveVector& k, const CavityFrame& frame);

/// omega_k = |k| in units with c = 1.
double dispersion(const WaveVector& k, const CavityFrame& frame);

/// diag(-1, -1, 1): the orientation change of a dipole mirrored in a plane
/// normal to z.
Mat3 reflection_matrix();

struct ImageDipole {
    double z;
    Mat3 orientation;  // identity or reflection_matrix()
    bool reflected;
    int n;
};

/// For each n in [n_lo, n_hi] emits (2nL + z_dip, 1) and (2nL - z_dip, R).
/// The (n = 0, 1) entry is the real dipole.
std::vector<ImageDipole> image_positions(double z_dip, const CavityFrame& frame, int n_lo, int n_hi);

}  // namespace fpcav
