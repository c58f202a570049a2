#include "esm/forward.hpp"

#include "esm/errors.hpp"
#include "esm/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace esm;
namespace sf = esm::specfun;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

Complex i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double max_rel_err(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const double scale = b.lpNorm<Eigen::Infinity>();
    return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

} // namespace

TEST_CASE("clamped disk modes satisfy the boundary conditions exactly") {
    const double a = 1.0, kappa = 2.0;
    const int n_max = 30;
    const DiskModes modes = disk_clamped_modes(a, kappa, n_max);
    const double ka = kappa * a;
    for (int n = -n_max; n <= n_max; ++n) {
        const Complex h = modes.h[n + n_max], k = modes.k[n + n_max];
        const Complex val = h * sf::hankel1(n, ka) + k * sf::bessel_k(n, ka) +
                            i_pow(n) * sf::bessel_j(n, ka);
        const Complex der = h * sf::hankel1_deriv(n, ka) + k * sf::bessel_k_deriv(n, ka) +
                            i_pow(n) * sf::bessel_j_deriv(n, ka);
        CHECK(std::abs(val) < 1e-10);
        CHECK(std::abs(der) < 1e-10);
    }
}

TEST_CASE("disk series translation identity") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    const auto angles = unit_circle_angles(32);
    const auto origin = disk_farfield_series(1.0, {0.0, 0.0}, wave, angles);
    const auto shifted = disk_farfield_series(1.0, {1.0, 1.0}, wave, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Vec2 xhat = unit_vector(angles[i]);
        const Complex phase =
            std::exp(-kI * (2.0 * Vec2{1.0, 1.0}.dot(xhat - wave.direction)));
        const Complex expected = phase * origin.values[Eigen::Index(i)];
        CHECK(std::abs(shifted.values[Eigen::Index(i)] - expected) < 1e-12);
    }
}

TEST_CASE("disk series truncation is converged") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    const auto angles = unit_circle_angles(32);
    const auto f30 = disk_farfield_series(1.0, {}, wave, angles, 30);
    const auto f40 = disk_farfield_series(1.0, {}, wave, angles, 40);
    CHECK((f30.values - f40.values).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("MFS reproduces the analytic disk far field") {
    const auto angles = unit_circle_angles(32);
    for (double kappa : {2.0, kPi}) {
        for (double a : {0.5, 1.0}) {
            const PlaneWave wave{kappa, {1.0, 0.0}};
            const Boundary disk(ShapeKind::Disk, {}, a);
            const MfsModel model = mfs_solve(disk, wave, 60, 180, 0.7);
            const auto mfs = mfs_farfield(model, angles, wave.direction);
            const auto series = disk_farfield_series(a, {}, wave, angles);
            CHECK(max_rel_err(mfs.values, series.values) < 1e-6);
        }
    }
}

TEST_CASE("MFS star solve converges under source refinement") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    const Boundary star(ShapeKind::Star);
    const auto angles = unit_circle_angles(32);
    const MfsModel coarse = mfs_solve(star, wave);
    CHECK(coarse.residual < 1e-8);
    const MfsModel fine = mfs_solve(star, wave, 640, 1280);
    const auto u_coarse = mfs_farfield(coarse, angles);
    const auto u_fine = mfs_farfield(fine, angles);
    CHECK((u_coarse.values - u_fine.values).lpNorm<Eigen::Infinity>() < 1e-7);
}

TEST_CASE("MFS translation covariance for the peanut") {
    const PlaneWave wave{2.0, {0.0, 1.0}};
    const auto angles = unit_circle_angles(32);
    const auto origin = mfs_farfield(mfs_solve(Boundary(ShapeKind::Peanut), wave, 160, 320, 0.7), angles);
    const auto shifted =
        mfs_farfield(mfs_solve(Boundary(ShapeKind::Peanut, {1.0, 1.0}), wave, 160, 320, 0.7), angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Vec2 xhat = unit_vector(angles[i]);
        const Complex phase =
            std::exp(-kI * (2.0 * Vec2{1.0, 1.0}.dot(xhat - wave.direction)));
        CHECK(std::abs(shifted.values[Eigen::Index(i)] -
                       phase * origin.values[Eigen::Index(i)]) < 1e-6);
    }
}

TEST_CASE("far field of single monopoles") {
    const auto angles = unit_circle_angles(8);
    MfsModel model;
    model.kappa = 2.0;
    model.sources = {{0.0, 0.0}};
    model.coeff_h = Eigen::VectorXcd::Ones(1);
    model.coeff_m = Eigen::VectorXcd::Zero(1);
    auto ff = mfs_farfield(model, angles);
    for (Eigen::Index i = 0; i < ff.values.size(); ++i)
        CHECK(std::abs(ff.values[i] - Complex(1.0)) < 1e-15);

    model.sources = {{1.0, 0.0}};
    ff = mfs_farfield(model, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Complex expected = std::exp(-2.0 * kI * std::cos(angles[i]));
        CHECK(std::abs(ff.values[Eigen::Index(i)] - expected) < 1e-14);
    }
}

TEST_CASE("mid-field values match the radiation asymptotics") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    const MfsModel model = mfs_solve(Boundary(ShapeKind::Peanut), wave, 160, 320, 0.7);
    const double r = 200.0;
    const std::vector<double> angles = unit_circle_angles(8);
    const auto ff = mfs_farfield(model, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Complex direct = mfs_field_h(model, unit_vector(angles[i]) * r);
        const Complex predicted = std::exp(kI * (kPi / 4.0)) /
                                  std::sqrt(8.0 * kPi * wave.kappa) *
                                  std::exp(kI * (wave.kappa * r)) / std::sqrt(r) *
                                  ff.values[Eigen::Index(i)];
        CHECK(std::abs(direct - predicted) / std::abs(predicted) < 0.01);
    }
}

TEST_CASE("far field is linear in the incident field") {
    // solving for d1 and d2 separately vs. a model fitted to the summed
    // right-hand side; MFS is linear in the boundary data
    const Boundary star(ShapeKind::Star);
    const auto angles = unit_circle_angles(32);
    const PlaneWave w1{2.0, {1.0, 0.0}};
    const PlaneWave w2{2.0, {0.0, 1.0}};
    const MfsModel m1 = mfs_solve(star, w1, 240, 480);
    const MfsModel m2 = mfs_solve(star, w2, 240, 480);
    MfsModel summed = m1;
    summed.coeff_h += m2.coeff_h;
    summed.coeff_m += m2.coeff_m;
    const auto lhs = mfs_farfield(summed, angles);
    const Eigen::VectorXcd rhs =
        mfs_farfield(m1, angles).values + mfs_farfield(m2, angles).values;
    CHECK((lhs.values - rhs).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("modified-Helmholtz coefficients never reach the far field") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    MfsModel model = mfs_solve(Boundary(ShapeKind::Peanut), wave, 160, 320, 0.7);
    const auto angles = unit_circle_angles(32);
    const auto before = mfs_farfield(model, angles);
    model.coeff_m.array() += Complex(42.0, -7.0);
    const auto after = mfs_farfield(model, angles);
    CHECK(before.values == after.values); // bit-identical
}

TEST_CASE("MFS precondition checks") {
    const PlaneWave wave{2.0, {1.0, 0.0}};
    const Boundary disk(ShapeKind::Disk, {}, 1.0);
    CHECK_THROWS_AS(mfs_solve(disk, wave, 80, 100), ConfigError);
    CHECK_THROWS_AS(mfs_solve(disk, wave, 40, 120, 1.5), ConfigError);
}
