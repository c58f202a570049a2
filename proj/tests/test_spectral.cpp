#include "esm/spectral.hpp"

#include "esm/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace esm;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest residual ||F v_j - lambda_j v_j|| over all eigenpairs.
double max_pair_residual(const Eigen::MatrixXcd& f, const Spectrum& s) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
        const double r = (f * s.eigenvectors.col(j) -
                          s.eigenvalues(j) * s.eigenvectors.col(j)).norm();
        worst = std::max(worst, r);
    }
    return worst;
}

// Compare eigenvalue multisets after modulus-descending sort.
double multiset_distance(Eigen::VectorXcd a, Eigen::VectorXcd b) {
    auto by_modulus = [](Complex x, Complex y) { return std::abs(x) > std::abs(y); };
    std::sort(a.begin(), a.end(), by_modulus);
    std::sort(b.begin(), b.end(), by_modulus);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(a(i)) - std::abs(b(i))));
    return worst;
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

} // namespace

TEST_CASE("assembled origin matrix is symmetric circulant with constant diagonal") {
    for (RefDiskKind kind : {RefDiskKind::Dirichlet, RefDiskKind::Neumann}) {
        const RefDiskSpec spec{kind, 0.7812, 2.0, 10};
        const FarFieldMatrix f = assemble(spec, {0.0, 0.0}, 32);
        const double scale = f.entries.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < 32; ++i) {
            CHECK(f.entries(i, i) == f.entries(0, 0));
            for (Eigen::Index j = 0; j < 32; ++j) {
                CHECK(std::abs(f.entries(i, j) - f.entries(j, i)) < 1e-14 * scale);
                const Eigen::Index shift = (i - j + 32) % 32;
                CHECK(std::abs(f.entries(i, j) - f.entries(shift, 0)) < 1e-14 * scale);
            }
        }
    }
    CHECK_THROWS_AS(assemble({RefDiskKind::Dirichlet, 0.5, 2.0, 10}, {0.0, 0.0}, 20),
                    ConfigError);
}

TEST_CASE("translation multiplies the entries by the expected phase ratio") {
    const RefDiskSpec spec{RefDiskKind::Dirichlet, 0.5, 2.0, 10};
    const FarFieldMatrix f0 = assemble(spec, {0.0, 0.0}, 32);
    const FarFieldMatrix fz = assemble(spec, {1.0, 1.0}, 32);
    const Complex kI{0.0, 1.0};
    for (Eigen::Index i = 0; i < 32; ++i)
        for (Eigen::Index j = 0; j < 32; ++j) {
            const Vec2 diff = unit_vector(f0.angles[std::size_t(i)]) -
                              unit_vector(f0.angles[std::size_t(j)]);
            const Complex phase = std::exp(-kI * (2.0 * Vec2{1.0, 1.0}.dot(diff)));
            CHECK(std::abs(fz.entries(i, j) - phase * f0.entries(i, j)) <
                  1e-13 * std::abs(f0.entries(i, j)) + 1e-15);
        }
}

TEST_CASE("assembled matrices are normal") {
    for (RefDiskKind kind : {RefDiskKind::Dirichlet, RefDiskKind::Neumann}) {
        const RefDiskSpec spec{kind, 0.7812, 2.0, 10};
        const FarFieldMatrix f = assemble(spec, {1.0, -0.5}, 32);
        const Eigen::MatrixXcd comm = f.entries * f.entries.adjoint() -
                                      f.entries.adjoint() * f.entries;
        const double norm2 = f.entries.squaredNorm();
        CHECK(comm.cwiseAbs().maxCoeff() <= 1e-12 * norm2);
    }
}

TEST_CASE("dense eigensolver on a trivial diagonal matrix") {
    FarFieldMatrix f;
    f.angles = {0.0, kPi};
    f.entries = Eigen::MatrixXcd::Zero(2, 2);
    f.entries(0, 0) = Complex(2.0, 0.0);
    f.entries(1, 1) = Complex(0.0, 1.0);
    const Spectrum s = eig_dense(f);
    CHECK(std::abs(s.eigenvalues(0) - Complex(2.0)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(1) - Complex(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(std::abs(s.eigenvectors(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(s.eigenvectors(1, 0)) < 1e-14);
    CHECK(std::abs(std::abs(s.eigenvectors(1, 1)) - 1.0) < 1e-14);
}

TEST_CASE("dense eigensolver satisfies the residual contract on a random normal matrix") {
    const Eigen::Index n = 24;
    const Eigen::MatrixXcd u = random_unitary(n, 77);
    std::mt19937_64 rng(78);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = Complex(gauss(rng), gauss(rng));
    FarFieldMatrix f;
    f.angles = unit_circle_angles(std::size_t(n));
    f.entries = u * d.asDiagonal() * u.adjoint();

    const Spectrum s = eig_dense(f);
    const double scale = f.entries.norm();
    CHECK(max_pair_residual(f.entries, s) <= 1e-10 * scale);
    // ordering contract: descending modulus
    for (Eigen::Index j = 1; j < n; ++j)
        CHECK(std::abs(s.eigenvalues(j)) <= std::abs(s.eigenvalues(j - 1)) + 1e-14 * scale);
    // normal matrix => orthonormal eigenvectors
    for (Eigen::Index j = 0; j < n; ++j) {
        CHECK(std::abs(s.eigenvectors.col(j).norm() - 1.0) < 1e-12);
        for (Eigen::Index k = j + 1; k < n; ++k)
            CHECK(std::abs(s.eigenvectors.col(j).dot(s.eigenvectors.col(k))) < 1e-8);
    }
}

TEST_CASE("circulant fast path matches the dense path on the origin matrix") {
    for (RefDiskKind kind : {RefDiskKind::Dirichlet, RefDiskKind::Neumann}) {
        const RefDiskSpec spec{kind, 0.7812, 2.0, 10};
        const FarFieldMatrix f0 = assemble(spec, {0.0, 0.0}, 32);
        const Spectrum fast = eig_circulant(spec, 32);
        const Spectrum dense = eig_dense(f0);
        CHECK(multiset_distance(fast.eigenvalues, dense.eigenvalues) < 1e-10);
        // each Fourier eigenvector is an exact eigenvector of F_0
        CHECK(max_pair_residual(f0.entries, fast) <= 1e-12 * f0.entries.norm());
        // truncated kernel rank
        int nonzero = 0;
        for (Eigen::Index j = 0; j < fast.eigenvalues.size(); ++j)
            if (std::abs(fast.eigenvalues(j)) > 1e-13) ++nonzero;
        CHECK(nonzero <= 2 * spec.n_trunc + 1);
    }
    CHECK_THROWS_AS(eig_circulant({RefDiskKind::Dirichlet, 0.5, 2.0, 10}, 21), ConfigError);
}

TEST_CASE("eigenvalues are translation invariant") {
    const RefDiskSpec spec{RefDiskKind::Dirichlet, 0.7812, 2.0, 10};
    const Spectrum fast = eig_circulant(spec, 32);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec2 z{coord(rng), coord(rng)};
        const Spectrum dense = eig_dense(assemble(spec, z, 32));
        CHECK(multiset_distance(fast.eigenvalues, dense.eigenvalues) < 1e-9);
    }
}

TEST_CASE("translate_spectrum reproduces the spectrum of the shifted matrix") {
    const RefDiskSpec spec{RefDiskKind::Neumann, 0.5, 2.0, 10};
    const Spectrum origin = eig_circulant(spec, 32);
    const auto angles = unit_circle_angles(32);

    SUBCASE("zero shift is the identity") {
        const Spectrum same = translate_spectrum(origin, {0.0, 0.0}, spec.kappa, angles);
        CHECK(same.eigenvalues == origin.eigenvalues);
        CHECK(same.eigenvectors == origin.eigenvectors);
    }

    SUBCASE("residual contract against the assembled F_z") {
        const Vec2 z{1.7, -2.3};
        const FarFieldMatrix fz = assemble(spec, z, 32);
        const Spectrum s = translate_spectrum(origin, z, spec.kappa, angles);
        CHECK(s.eigenvalues == origin.eigenvalues);
        CHECK(max_pair_residual(fz.entries, s) <= 1e-12 * fz.entries.norm());
        for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j)
            CHECK(std::abs(s.eigenvectors.col(j).norm() - 1.0) < 1e-14);
    }

    SUBCASE("angle-count mismatch is rejected") {
        CHECK_THROWS_AS(translate_spectrum(origin, {1.0, 0.0}, spec.kappa,
                                           unit_circle_angles(16)),
                        ConfigError);
    }
}
