#pragma once

#include "esm/refdisk.hpp"

#include <Eigen/Dense>

// Discrete reference-disk far-field matrix F_z and its eigensystem.
//
// At equispaced observation angles F_0 is circulant, so its eigenvectors
// are the discrete Fourier vectors and the eigenvalues follow from the
// kernel's Fourier coefficients. Translation by z conjugates F_0 with the
// unitary diagonal diag(exp(-i kappa z.xhat_i)), leaving the eigenvalues
// untouched.

namespace esm {

struct FarFieldMatrix {
    RefDiskSpec spec;
    Vec2 center{};
    std::vector<double> angles;
    Eigen::MatrixXcd entries;
};

// Eigenvalues sorted by descending modulus, ties broken by ascending phase
// in [0, 2pi); eigenvectors orthonormal (column j pairs with eigenvalue j).
struct Spectrum {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

/// Assemble F_z(i,j) = kernel_translated(spec, z, theta_i, theta_j) at
/// N equispaced angles. Requires N >= 2*n_trunc + 2.
FarFieldMatrix assemble(const RefDiskSpec& spec, Vec2 z, std::size_t n);

/// Dense eigendecomposition. Eigenvectors within (numerically) degenerate
/// eigenvalue clusters are re-orthonormalized so the indicator downstream
/// is basis-independent.
Spectrum eig_dense(const FarFieldMatrix& f);

/// Fast path for the origin-centered matrix: Fourier eigenvectors, eigenvalues
/// N * c_n folded by aliasing. Same ordering contract as eig_dense.
Spectrum eig_circulant(const RefDiskSpec& spec, std::size_t n);

/// Spectrum of F_z from the spectrum of F_0: eigenvalues copied, eigenvectors
/// modulated entrywise by exp(-i kappa z.xhat_i).
Spectrum translate_spectrum(const Spectrum& origin, Vec2 z, double kappa,
                            const std::vector<double>& angles);

} // namespace esm
