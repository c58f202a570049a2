#include "esm/forward.hpp"

#include "esm/errors.hpp"
#include "esm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace esm {

namespace sf = specfun;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Minimum-norm least-squares solve of A c = rhs by truncated SVD with the
// given relative singular-value cutoff.
Eigen::VectorXcd tsvd_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs,
                            double rel_cutoff) {
    const auto rows = static_cast<lapack_int>(a.rows());
    const auto cols = static_cast<lapack_int>(a.cols());
    const lapack_int rank_max = std::min(rows, cols);

    Eigen::MatrixXcd work = a; // zgesdd destroys its input
    Eigen::VectorXd sigma(rank_max);
    Eigen::MatrixXcd u(rows, rank_max);
    Eigen::MatrixXcd vt(rank_max, cols);
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', rows, cols, work.data(), rows, sigma.data(),
        u.data(), rows, vt.data(), rank_max);
    if (info != 0)
        throw NumericError("tsvd_solve: zgesdd failed with info = " + std::to_string(info));

    Eigen::VectorXcd beta = u.adjoint() * rhs;
    const double cutoff = rel_cutoff * sigma(0);
    for (lapack_int i = 0; i < rank_max; ++i)
        beta(i) = (sigma(i) >= cutoff) ? beta(i) / sigma(i) : Complex(0.0);
    return vt.adjoint() * beta;
}

} // namespace

DiskModes disk_clamped_modes(double a, double kappa, int n_max) {
    DiskModes modes;
    modes.n_max = n_max;
    modes.h.resize(2 * n_max + 1);
    modes.k.resize(2 * n_max + 1);
    const double ka = kappa * a;
    for (int n = -n_max; n <= n_max; ++n) {
        const Complex hn = sf::hankel1(n, ka);
        const Complex hnp = sf::hankel1_deriv(n, ka);
        const double kn = sf::bessel_k(n, ka);
        const double knp = sf::bessel_k_deriv(n, ka);
        const double jn = sf::bessel_j(n, ka);
        const double jnp = sf::bessel_j_deriv(n, ka);

        const Complex det = hn * knp - Complex(kn) * hnp;
        const double scale = std::abs(hn * knp) + std::abs(kn * hnp);
        if (std::abs(det) < 1e-14 * scale)
            throw NumericError("disk_farfield_series: singular clamped mode system at n = " +
                               std::to_string(n));

        const Complex rhs0 = -i_pow(n) * jn;
        const Complex rhs1 = -i_pow(n) * jnp;
        modes.h[n + n_max] = (rhs0 * knp - Complex(kn) * rhs1) / det;
        modes.k[n + n_max] = (hn * rhs1 - rhs0 * hnp) / det;
    }
    return modes;
}

FarFieldVector disk_farfield_series(double a, Vec2 center, const PlaneWave& wave,
                                    const std::vector<double>& angles, int n_max) {
    if (a <= 0.0) throw ConfigError("disk_farfield_series: radius must be positive");
    const DiskModes modes = disk_clamped_modes(a, wave.kappa, n_max);

    const double theta_d = std::atan2(wave.direction.y, wave.direction.x);
    FarFieldVector ff;
    ff.kappa = wave.kappa;
    ff.angles = angles;
    ff.direction = wave.direction;
    ff.values.resize(static_cast<Eigen::Index>(angles.size()));

    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double delta = angles[i] - theta_d;
        Complex sum = 0.0;
        // Only the H_n^{(1)} amplitudes survive in the far field; in the
        // chosen normalization H_n^{(1)}(kr) e^{in theta} contributes
        // 4 (-i)^{n+1} e^{in theta}.
        for (int n = -modes.n_max; n <= modes.n_max; ++n) {
            const Complex c = modes.h[n + modes.n_max];
            sum += 4.0 * i_pow(-n) * (-kI) * c * std::exp(kI * (double(n) * delta));
        }
        const Vec2 xhat = unit_vector(angles[i]);
        const Complex phase = std::exp(-kI * (wave.kappa * center.dot(xhat - wave.direction)));
        ff.values[static_cast<Eigen::Index>(i)] = phase * sum;
    }
    return ff;
}

MfsModel mfs_solve(const Boundary& b, const PlaneWave& wave,
                   std::size_t m_src, std::size_t m_col, double tau) {
    if (m_col < 2 * m_src)
        throw ConfigError("mfs_solve: need m_col >= 2 * m_src");
    if (!(tau > 0.0 && tau < 1.0))
        throw ConfigError("mfs_solve: source-curve scale tau must lie in (0, 1)");

    const double kappa = wave.kappa;
    const Vec2 d = wave.direction;
    const Vec2 center = b.shift();

    MfsModel model;
    model.kappa = kappa;
    model.sources.resize(m_src);
    for (std::size_t m = 0; m < m_src; ++m) {
        const double t = kTwoPi * static_cast<double>(m) / static_cast<double>(m_src);
        model.sources[m] = center + (b.point(t) - center) * tau;
    }

    const auto rows = static_cast<Eigen::Index>(2 * m_col);
    const auto cols = static_cast<Eigen::Index>(2 * m_src);
    Eigen::MatrixXcd A(rows, cols);
    Eigen::VectorXcd rhs(rows);

    for (std::size_t j = 0; j < m_col; ++j) {
        const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(m_col);
        const Vec2 x = b.point(t);
        const Vec2 nu = b.normal(t);
        const auto jd = static_cast<Eigen::Index>(j);
        const auto jn = static_cast<Eigen::Index>(m_col + j);

        for (std::size_t m = 0; m < m_src; ++m) {
            const Vec2 diff = x - model.sources[m];
            const double r = diff.norm();
            const double dn = diff.dot(nu) / r;
            const auto mh = static_cast<Eigen::Index>(m);
            const auto mm = static_cast<Eigen::Index>(m_src + m);

            // Phi_H = (i/4) H_0^{(1)}(kappa r), Phi_M = K_0(kappa r) / (2 pi)
            A(jd, mh) = 0.25 * kI * sf::hankel1(0, kappa * r);
            A(jd, mm) = sf::bessel_k(0, kappa * r) / kTwoPi;
            A(jn, mh) = -0.25 * kI * kappa * sf::hankel1(1, kappa * r) * dn;
            A(jn, mm) = -kappa * sf::bessel_k(1, kappa * r) / kTwoPi * dn;
        }

        const Complex ui = std::exp(kI * (kappa * x.dot(d)));
        rhs(jd) = -ui;
        rhs(jn) = -kI * kappa * d.dot(nu) * ui;
    }

    // Truncated SVD with relative cutoff 1e-12.
    const Eigen::VectorXcd c = tsvd_solve(A, rhs, 1e-12);

    model.coeff_h = c.head(static_cast<Eigen::Index>(m_src));
    model.coeff_m = c.tail(static_cast<Eigen::Index>(m_src));
    model.residual = (A * c - rhs).norm() / rhs.norm();

    if (model.residual > 1e-6)
        throw NumericError("mfs_solve: boundary residual " + std::to_string(model.residual) +
                           " exceeds 1e-6; increase m_src/m_col");
    return model;
}

FarFieldVector mfs_farfield(const MfsModel& model, const std::vector<double>& angles,
                            Vec2 incident_direction) {
    FarFieldVector ff;
    ff.kappa = model.kappa;
    ff.angles = angles;
    ff.direction = incident_direction;
    ff.values.resize(static_cast<Eigen::Index>(angles.size()));
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Vec2 xhat = unit_vector(angles[i]);
        Complex sum = 0.0;
        for (std::size_t m = 0; m < model.sources.size(); ++m)
            sum += model.coeff_h[static_cast<Eigen::Index>(m)] *
                   std::exp(-kI * (model.kappa * xhat.dot(model.sources[m])));
        ff.values[static_cast<Eigen::Index>(i)] = sum;
    }
    return ff;
}

Complex mfs_field_h(const MfsModel& model, Vec2 x) {
    Complex sum = 0.0;
    for (std::size_t m = 0; m < model.sources.size(); ++m) {
        const double r = (x - model.sources[m]).norm();
        sum += model.coeff_h[static_cast<Eigen::Index>(m)] * 0.25 * kI *
               sf::hankel1(0, model.kappa * r);
    }
    return sum;
}

} // namespace esm
