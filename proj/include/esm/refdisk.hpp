#pragma once

#include "esm/geometry.hpp"

#include <complex>
#include <vector>

// Closed-form far-field kernels of the sound-soft (Dirichlet) and
// sound-hard (Neumann) reference disks, truncated to the first
// n_trunc + 1 Fourier modes, plus the translation to arbitrary centers.

namespace esm {

using Complex = std::complex<double>;

enum class RefDiskKind { Dirichlet, Neumann };

RefDiskKind refdisk_kind_from_name(const std::string& name); // "dirichlet" | "neumann"
std::string refdisk_kind_name(RefDiskKind kind);

struct RefDiskSpec {
    RefDiskKind kind = RefDiskKind::Dirichlet;
    double radius = 0.5;   // R > 0
    double kappa = 2.0;    // wavenumber > 0
    int n_trunc = 10;      // retain modes |n| <= n_trunc
};

/// Far-field kernel of the origin-centered reference disk. Depends on the
/// angles only through theta_x - theta_y:
///   Dirichlet: -(4/i) [ J_0/H_0 + 2 sum_n (J_n/H_n)(kR) cos(n dtheta) ]
///   Neumann:   same with the ratios J_n'(kR)/H_n'(kR).
Complex kernel_origin(const RefDiskSpec& spec, double theta_x, double theta_y);

/// Kernel of the disk translated to z: exp(-i kappa z.(xhat - yhat)) times
/// the origin kernel.
Complex kernel_translated(const RefDiskSpec& spec, Vec2 z, double theta_x, double theta_y);

/// Fourier coefficients c_n of the kernel, indexed n = -n_trunc..n_trunc
/// (offset n + n_trunc), with c_{-n} = c_n and
///   kernel_origin(tx, ty) = sum_n c_n exp(i n (tx - ty)).
std::vector<Complex> mie_eigen_coefficients(const RefDiskSpec& spec);

// Advisory check that kappa^2 stays away from the interior Laplace
// eigenvalues of the sampling disk within the truncated mode range.
// Only modes n <= kappa*R are scanned: zeros of J_n / J_n' lie above n,
// so higher modes cannot be resonant at this radius.
struct ExclusionCheck {
    bool ok = true;
    int mode = -1;       // offending mode when !ok
    double value = 0.0;  // |J_n(kR)| or |J_n'(kR)| at that mode
};

ExclusionCheck eigenvalue_exclusion_check(const RefDiskSpec& spec, double tol = 1e-3);

} // namespace esm
