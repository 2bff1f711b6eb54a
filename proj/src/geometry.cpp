#include "fpcavity/geometry.hpp"

#include <cmath>
#include <numbers>

namespace fpcav {

namespace {

Eigen::Vector2d transverse_unit(const WaveVector& k) {
    const double kp = k.k_perp.norm();
    if (kp == 0.0) return Eigen::Vector2d(1.0, 0.0);
    return k.k_perp / kp;
}

}  // namespace

void CavityFrame::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("cavity length must be > 0");
}

double WaveVector::axial(const CavityFrame& frame) const { return n * std::numbers::pi / frame.length; }

double WaveVector::modulus(const CavityFrame& frame) const {
    return std::hypot(axial(frame), k_perp.norm());
}

CVec3 mode_fn(ModeKind kind, const WaveVector& k, const Vec3& r, const CavityFrame& frame) {
    frame.validate();
    if (k.n < 0) throw DomainError("mode_fn: axial index must be >= 0");
    const double kn = k.axial(frame);
    const double kp = k.k_perp.norm();
    const Eigen::Vector2d kh = transverse_unit(k);
    const std::complex<double> phase = std::polar(1.0, k.k_perp.dot(r.head<2>()));
    const double s = std::sin(kn * r.z());
    const double c = std::cos(kn * r.z());

    CVec3 out = CVec3::Zero();
    if (kind == ModeKind::TE) {
        if (k.n == 0) throw DomainError("mode_fn: there is no TE mode with k_n = 0");
        // k^_perp x z^ = (k^_y, -k^_x, 0)
        out << kh.y() * s * phase, -kh.x() * s * phase, 0.0;
        return out;
    }
    const double kmod = std::hypot(kn, kp);
    if (kmod == 0.0) throw DomainError("mode_fn: TM mode undefined at k = 0");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> tr = -i * kn * s / kmod * phase;
    out << tr * kh.x(), tr * kh.y(), kp * c / kmod * phase;
    return out;
}

std::array<PlaneWave, 2> plane_wave_decomposition(ModeKind kind, const WaveVector& k, const CavityFrame& frame) {
    frame.validate();
    const double kn = k.axial(frame);
    const double kp = k.k_perp.norm();
    const Eigen::Vector2d kh = transverse_unit(k);
    const Vec3 kplus(k.k_perp.x(), k.k_perp.y(), kn);
    const Vec3 kminus(k.k_perp.x(), k.k_perp.y(), -kn);
    const std::complex<double> i(0.0, 1.0);

    if (kind == ModeKind::TE) {
        if (k.n == 0) throw DomainError("plane_wave_decomposition: there is no TE mode with k_n = 0");
        // sin(kn z) = (e^{i kn z} - e^{-i kn z}) / 2i
        const CVec3 pol(kh.y(), -kh.x(), 0.0);
        return {PlaneWave{kplus, pol / (2.0 * i)}, PlaneWave{kminus, -pol / (2.0 * i)}};
    }
    const double kmod = std::hypot(kn, kp);
    if (kmod == 0.0) throw DomainError("plane_wave_decomposition: TM mode undefined at k = 0");
    // (1/2k) [(k_perp z^ - k_n k^_perp) e^{+} + (k_perp z^ + k_n k^_perp) e^{-}]
    const CVec3 plus(-kn * kh.x() / (2.0 * kmod), -kn * kh.y() / (2.0 * kmod), kp / (2.0 * kmod));
    const CVec3 minus(kn * kh.x() / (2.0 * kmod), kn * kh.y() / (2.0 * kmod), kp / (2.0 * kmod));
    return {PlaneWave{kplus, plus}, PlaneWave{kminus, minus}};
}

double dispersion(const WaveVector& k, const CavityFrame& frame) {
    frame.validate();
    return k.modulus(frame);
}

Mat3 reflection_matrix() { return Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal(); }

std::vector<ImageDipole> image_positions(double z_dip, const CavityFrame& frame, int n_lo, int n_hi) {
    frame.validate();
    if (!(z_dip > 0.0 && z_dip < frame.length)) throw DomainError("image_positions: dipole must lie strictly inside the cavity");
    if (n_hi < n_lo) throw DomainError("image_positions: empty index range");
    std::vector<ImageDipole> out;
    out.reserve(2 * static_cast<std::size_t>(n_hi - n_lo + 1));
    const Mat3 one = Mat3::Identity();
    const Mat3 refl = reflection_matrix();
    for (int n = n_lo; n <= n_hi; ++n) {
        const double shift = 2.0 * n * frame.length;
        out.push_back({shift + z_dip, one, false, n});
        out.push_back({shift - z_dip, refl, true, n});
    }
    return out;
}

}  // namespace fpcav
