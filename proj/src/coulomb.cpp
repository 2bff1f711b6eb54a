#include "fpcavity/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpcavity/specfun.hpp"

namespace fpcav {

void Separation::validate() const {
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(phi))
        throw DomainError("separation: components must be finite");
    if (v < 0.0) throw DomainError("separation: v must be >= 0");
}

Mat3 axial_rotation(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Mat3 r;
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

Mat3 rotate_kernel(const Mat3& frame_kernel, double phi) {
    if (phi == 0.0) return frame_kernel;
    const Mat3 r = axial_rotation(phi);
    return r * frame_kernel * r.transpose();
}

namespace {

// Nearest lattice copy of u, in [-1, 1].
double reduce_axial(double u) { return u - 2.0 * std::nearbyint(0.5 * u); }

void add_lattice_term(Mat3& acc, double w, double v) {
    const double r2 = w * w + v * v;
    const double inv3 = 1.0 / (r2 * std::sqrt(r2));
    const double inv5 = inv3 / r2;
    acc(0, 0) += inv3 - 3.0 * v * v * inv5;
    acc(1, 1) += inv3;
    acc(2, 2) += inv3 - 3.0 * w * w * inv5;
    acc(0, 2) += -3.0 * v * w * inv5;
}

}  // namespace

Mat3 kernel_e_truncated(const Separation& sep, std::int64_t n_max) {
    sep.validate();
    const double u = reduce_axial(sep.u);
    if (sep.v == 0.0 && u == 0.0) throw DomainError("kernel_e: coincident source points");
    Mat3 acc = Mat3::Zero();
    for (std::int64_t n = n_max; n >= 1; --n) {
        add_lattice_term(acc, 2.0 * n + u, sep.v);
        add_lattice_term(acc, -2.0 * n + u, sep.v);
    }
    add_lattice_term(acc, u, sep.v);
    acc(2, 0) = acc(0, 2);
    return rotate_kernel(acc, sep.phi);
}

KernelMatrix kernel_e(Sign sign, const Separation& sep, const Tolerance& tol) {
    tol.validate();
    // Every entry of a lattice term is bounded by 2 / rho_n^3 and |2n + u| >= 2|n| - 1,
    // so the two tails together stay below 1 / (2N - 1)^2.
    const double n_real = 0.5 * (1.0 / std::sqrt(tol.abs_tol) + 1.0);
    if (n_real > 1e9) throw ConvergenceError("kernel_e: truncation bound unattainable for abs_tol", 0.0, tol.abs_tol);
    const auto n_max = static_cast<std::int64_t>(std::ceil(n_real));
    Mat3 m = kernel_e_truncated(sep, n_max);
    if (sign == Sign::minus) return {m * reflection_matrix(), KernelKind::E_MINUS};
    return {m, KernelKind::E_PLUS};
}

KernelMatrix self_energy_matrix(double z_over_L, const Tolerance& tol) {
    if (!(z_over_L > 0.0 && z_over_L < 1.0)) throw DomainError("self_energy_matrix: need 0 < z/L < 1");
    const double zeta_part = apery_zeta3() / 4.0;
    const double lattice = xi(2.0 * z_over_L, 0.0, tol);
    Mat3 m = Mat3::Zero();
    m(0, 0) = zeta_part - lattice;
    m(1, 1) = zeta_part - lattice;
    m(2, 2) = -2.0 * zeta_part - 2.0 * lattice;
    return {m, KernelKind::SELF};
}

namespace {

void check_configuration(std::span<const DipoleSpec> dipoles, const CavityFrame& frame) {
    frame.validate();
    if (dipoles.size() < 2) throw DomainError("dipole energy: need at least two dipoles");
    for (const auto& d : dipoles) {
        if (!(d.position.z() > 0.0 && d.position.z() < frame.length))
            throw DomainError("dipole energy: dipole outside the open cavity (0, L)");
    }
    for (std::size_t a = 0; a < dipoles.size(); ++a)
        for (std::size_t b = a + 1; b < dipoles.size(); ++b)
            if (dipoles[a].position == dipoles[b].position)
                throw DomainError("dipole energy: coincident dipoles");
}

}  // namespace

double dipole_dipole_energy(std::span<const DipoleSpec> dipoles, const CavityFrame& frame, const Tolerance& tol,
                            const KernelFn& kernel) {
    check_configuration(dipoles, frame);
    const KernelFn& k = kernel ? kernel : KernelFn(kernel_e);
    const double L = frame.length;
    double energy = 0.0;
    for (std::size_t a = 0; a < dipoles.size(); ++a) {
        for (std::size_t b = 0; b < dipoles.size(); ++b) {
            if (a == b) continue;
            const Vec3& ra = dipoles[a].position;
            const Vec3& rb = dipoles[b].position;
            const double dx = ra.x() - rb.x();
            const double dy = ra.y() - rb.y();
            const double v = std::hypot(dx, dy) / L;
            const double phi = (v == 0.0) ? 0.0 : std::atan2(dy, dx);
            const Mat3 direct = k(Sign::plus, {(ra.z() - rb.z()) / L, v, phi}, tol).m;
            const Mat3 mirrored = k(Sign::minus, {(ra.z() + rb.z()) / L, v, phi}, tol).m;
            energy += dipoles[a].moment.dot((direct + mirrored) * dipoles[b].moment);
        }
    }
    return energy / (8.0 * std::numbers::pi * L * L * L);
}

double brute_force_coulomb(std::span<const DipoleSpec> dipoles, const CavityFrame& frame, int n_images) {
    check_configuration(dipoles, frame);
    if (n_images < 0) throw DomainError("brute_force_coulomb: n_images must be >= 0");
    double energy = 0.0;
    for (std::size_t b = 0; b < dipoles.size(); ++b) {
        auto images = image_positions(dipoles[b].position.z(), frame, -n_images, n_images);
        // Far images first.
        std::stable_sort(images.begin(), images.end(),
                         [](const ImageDipole& x, const ImageDipole& y) { return std::abs(x.n) > std::abs(y.n); });
        for (std::size_t a = 0; a < dipoles.size(); ++a) {
            if (a == b) continue;
            const Vec3& da = dipoles[a].moment;
            const Vec3& ra = dipoles[a].position;
            double pair = 0.0;
            for (const auto& img : images) {
                const Vec3 r(ra.x() - dipoles[b].position.x(), ra.y() - dipoles[b].position.y(), ra.z() - img.z);
                const double dist = r.norm();
                const Vec3 rhat = r / dist;
                const Vec3 di = img.orientation * dipoles[b].moment;
                pair += (da.dot(di) - 3.0 * da.dot(rhat) * di.dot(rhat)) / (dist * dist * dist);
            }
            energy += pair;
        }
    }
    return 0.5 * energy / (4.0 * std::numbers::pi);
}

}  // namespace fpcav
