#include "esm/spectral.hpp"

#include "esm/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace esm {

namespace {

constexpr Complex kI{0.0, 1.0};

double phase_in_2pi(Complex v) {
    double p = std::arg(v);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    return p;
}

// Descending modulus, ties by ascending phase in [0, 2pi).
bool eigen_order(Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return phase_in_2pi(a) < phase_in_2pi(b);
}

Spectrum sorted_spectrum(Eigen::VectorXcd values, Eigen::MatrixXcd vectors) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eigen_order(values(a), values(b));
    });
    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        s.eigenvalues(j) = values(order[static_cast<std::size_t>(j)]);
        s.eigenvectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
    }
    return s;
}

// Re-orthonormalize eigenvector columns within clusters of (numerically)
// equal eigenvalues. The ESM kernel pairs the +n and -n Fourier modes, so
// two-dimensional eigenspaces are the norm rather than the exception.
void orthonormalize_clusters(Spectrum& s) {
    const Eigen::Index n = s.eigenvalues.size();
    if (n == 0) return;
    const double scale = std::abs(s.eigenvalues(0));
    const double tol = 1e-10 * std::max(scale, 1e-300);
    Eigen::Index begin = 0;
    while (begin < n) {
        Eigen::Index end = begin + 1;
        while (end < n && std::abs(s.eigenvalues(end) - s.eigenvalues(begin)) <= tol) ++end;
        if (end - begin > 1) {
            Eigen::MatrixXcd block = s.eigenvectors.middleCols(begin, end - begin);
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
            Eigen::MatrixXcd q = qr.householderQ() *
                                 Eigen::MatrixXcd::Identity(block.rows(), block.cols());
            s.eigenvectors.middleCols(begin, end - begin) = q;
        } else {
            s.eigenvectors.col(begin).normalize();
        }
        begin = end;
    }
}

} // namespace

FarFieldMatrix assemble(const RefDiskSpec& spec, Vec2 z, std::size_t n) {
    if (n < static_cast<std::size_t>(2 * spec.n_trunc + 2))
        throw ConfigError("assemble: N must be at least 2*n_trunc + 2");
    FarFieldMatrix f;
    f.spec = spec;
    f.center = z;
    f.angles = unit_circle_angles(n);
    const auto ni = static_cast<Eigen::Index>(n);
    f.entries.resize(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i)
        for (Eigen::Index j = 0; j < ni; ++j)
            f.entries(i, j) = kernel_translated(spec, z, f.angles[static_cast<std::size_t>(i)],
                                                f.angles[static_cast<std::size_t>(j)]);
    return f;
}

Spectrum eig_dense(const FarFieldMatrix& f) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(f.entries);
    if (solver.info() != Eigen::Success)
        throw NumericError("eig_dense: eigensolver did not converge (info = " +
                           std::to_string(static_cast<int>(solver.info())) + ")");
    Spectrum s = sorted_spectrum(solver.eigenvalues(), solver.eigenvectors());
    orthonormalize_clusters(s);
    return s;
}

Spectrum eig_circulant(const RefDiskSpec& spec, std::size_t n) {
    if (n < static_cast<std::size_t>(2 * spec.n_trunc + 2))
        throw ConfigError("eig_circulant: N must be at least 2*n_trunc + 2");
    const std::vector<Complex> c = mie_eigen_coefficients(spec);
    const auto ni = static_cast<Eigen::Index>(n);
    const int in = static_cast<int>(n);

    // lambda_k = N * sum of c_n over modes n congruent to k (mod N)
    Eigen::VectorXcd values = Eigen::VectorXcd::Zero(ni);
    for (int m = -spec.n_trunc; m <= spec.n_trunc; ++m) {
        const int k = ((m % in) + in) % in;
        values(k) += static_cast<double>(n) * c[static_cast<std::size_t>(m + spec.n_trunc)];
    }

    Eigen::MatrixXcd vectors(ni, ni);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < ni; ++k)
        for (Eigen::Index j = 0; j < ni; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(n);
            vectors(j, k) = inv_sqrt_n * std::exp(kI * (static_cast<double>(k) * theta));
        }

    return sorted_spectrum(std::move(values), std::move(vectors));
}

Spectrum translate_spectrum(const Spectrum& origin, Vec2 z, double kappa,
                            const std::vector<double>& angles) {
    if (static_cast<Eigen::Index>(angles.size()) != origin.eigenvectors.rows())
        throw ConfigError("translate_spectrum: angle count does not match spectrum size");
    Spectrum s;
    s.eigenvalues = origin.eigenvalues;
    s.eigenvectors = origin.eigenvectors;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const Complex phase = std::exp(-kI * (kappa * z.dot(unit_vector(angles[i]))));
        s.eigenvectors.row(static_cast<Eigen::Index>(i)) *= phase;
    }
    return s;
}

} // namespace esm
