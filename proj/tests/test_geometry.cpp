#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fpcavity/geometry.hpp"

using namespace fpcav;

namespace {

CVec3 recombine(const std::array<PlaneWave, 2>& waves, const Vec3& r) {
    CVec3 out = CVec3::Zero();
    for (const auto& w : waves) out += w.amplitude * std::polar(1.0, w.wavevector.dot(r));
    return out;
}

}  // namespace

TEST_CASE("mode functions satisfy the mirror boundary conditions") {
    const CavityFrame f{2.0};
    const WaveVector k{3, Eigen::Vector2d(0.4, -1.1)};
    for (double z : {0.0, f.length}) {
        const Vec3 r(0.3, 0.8, z);
        const CVec3 te = mode_fn(ModeKind::TE, k, r, f);
        CHECK(std::abs(te.x()) < 1e-14);
        CHECK(std::abs(te.y()) < 1e-14);
        const CVec3 tm = mode_fn(ModeKind::TM, k, r, f);
        CHECK(std::abs(tm.x()) < 1e-14);
        CHECK(std::abs(tm.y()) < 1e-14);
        CHECK(std::abs(tm.z()) > 0.1);
    }
}

TEST_CASE("plane-wave pairs are transverse and rebuild the standing mode") {
    const CavityFrame f{1.5};
    for (ModeKind kind : {ModeKind::TE, ModeKind::TM}) {
        for (int n : {1, 2, 5}) {
            const WaveVector k{n, Eigen::Vector2d(0.7, 0.2)};
            const auto waves = plane_wave_decomposition(kind, k, f);
            for (const auto& w : waves) {
                CHECK(std::abs(w.wavevector.cast<std::complex<double>>().dot(w.amplitude)) < 1e-14);
                CHECK(w.wavevector.norm() == doctest::Approx(dispersion(k, f)).epsilon(1e-15));
            }
            CHECK(waves[0].wavevector.z() == doctest::Approx(n * std::numbers::pi / f.length));
            CHECK(waves[1].wavevector.z() == doctest::Approx(-n * std::numbers::pi / f.length));
            for (const Vec3& r : {Vec3(0.1, 0.2, 0.3), Vec3(-1.0, 2.0, 1.2)}) {
                CHECK((recombine(waves, r) - mode_fn(kind, k, r, f)).norm() < 1e-14);
            }
        }
    }
}

TEST_CASE("TM with n = 0 is the uniform axial mode; TE needs n >= 1") {
    const CavityFrame f{1.0};
    const WaveVector k{0, Eigen::Vector2d(1.0, 0.0)};
    const CVec3 tm = mode_fn(ModeKind::TM, k, Vec3(0.0, 0.0, 0.37), f);
    CHECK(std::abs(tm.z() - 1.0) < 1e-15);
    CHECK_THROWS_AS(mode_fn(ModeKind::TE, k, Vec3::Zero(), f), DomainError);
    CHECK_THROWS_AS(mode_fn(ModeKind::TM, WaveVector{}, Vec3::Zero(), f), DomainError);
    CHECK_THROWS_AS(mode_fn(ModeKind::TM, k, Vec3::Zero(), CavityFrame{0.0}), DomainError);
}

TEST_CASE("zero transverse wave vector picks x as the transverse direction") {
    const CavityFrame f{1.0};
    const CVec3 te = mode_fn(ModeKind::TE, WaveVector{1, Eigen::Vector2d::Zero()}, Vec3(0, 0, 0.5), f);
    CHECK(std::abs(te.y() + 1.0) < 1e-15);  // k^ x z^ = -y^ at sin(pi/2) = 1
    CHECK(std::abs(te.x()) < 1e-15);
}

TEST_CASE("image lattice") {
    const CavityFrame f{2.0};
    const auto imgs = image_positions(0.5, f, -1, 1);
    REQUIRE(imgs.size() == 6);
    const Mat3 R = reflection_matrix();
    CHECK(R == Eigen::Vector3d(-1, -1, 1).asDiagonal().toDenseMatrix());
    CHECK((R * R - Mat3::Identity()).norm() == 0.0);
    for (const auto& im : imgs) {
        const double expect = 2.0 * im.n * f.length + (im.reflected ? -0.5 : 0.5);
        CHECK(im.z == doctest::Approx(expect));
        CHECK(im.orientation == (im.reflected ? R : Mat3::Identity()));
    }
    CHECK_THROWS_AS(image_positions(0.0, f, 0, 1), DomainError);
    CHECK_THROWS_AS(image_positions(2.0, f, 0, 1), DomainError);
    CHECK_THROWS_AS(image_positions(1.0, f, 2, 1), DomainError);
}
