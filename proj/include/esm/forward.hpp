#pragma once

#include "esm/geometry.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Forward solvers for the clamped biharmonic scattering problem.
//
// The scattered field splits into a propagating Helmholtz part and an
// evanescent modified-Helmholtz part; only the Helmholtz part carries a
// far field. The normalization is fixed so that a Helmholtz monopole at y
// has far field exp(-i kappa xhat . y).

namespace esm {

using Complex = std::complex<double>;

struct PlaneWave {
    double kappa = 2.0;     // wavenumber, > 0
    Vec2 direction{1.0, 0.0}; // unit incident direction
};

struct FarFieldVector {
    double kappa = 0.0;
    std::vector<double> angles;   // observation angles of xhat_i
    Eigen::VectorXcd values;      // u_inf(xhat_i)
    Vec2 direction{};             // incident direction the column belongs to
};

// Per-mode clamped-disk amplitudes about the disk center:
//   u^s(r, theta) = sum_n [ h_n H_n^{(1)}(kr) + k_n K_n(kr) ] e^{i n (theta - theta_d)}
// with the incident wave expanded as sum_n i^n J_n(kr) e^{i n (theta - theta_d)}.
struct DiskModes {
    int n_max = 0;
    std::vector<Complex> h; // index n + n_max
    std::vector<Complex> k;
};

DiskModes disk_clamped_modes(double a, double kappa, int n_max);

/// Analytic clamped-disk far field by separation of variables.
/// Per mode n the 2x2 system couples an outgoing H_n^{(1)} amplitude with an
/// evanescent K_n amplitude so that u = du/dr = 0 on r = a. A disk centered
/// away from the origin picks up the phase exp(-i kappa c . (xhat - d)).
FarFieldVector disk_farfield_series(double a, Vec2 center, const PlaneWave& wave,
                                    const std::vector<double>& angles, int n_max = 30);

// Method-of-fundamental-solutions model: Helmholtz and modified-Helmholtz
// monopoles on an interior source curve, fitted to the clamped boundary
// conditions in the least-squares sense.
struct MfsModel {
    double kappa = 0.0;
    std::vector<Vec2> sources;
    Eigen::VectorXcd coeff_h;  // Helmholtz monopole amplitudes
    Eigen::VectorXcd coeff_m;  // modified-Helmholtz amplitudes (no far field)
    double residual = 0.0;     // relative boundary residual of the fit
};

/// Fit an MFS model for the given boundary and incident wave.
/// Sources live on the boundary scaled by tau about its shift point.
/// Solved by truncated SVD (relative cutoff 1e-12); throws NumericError if
/// the relative boundary residual exceeds 1e-6.
MfsModel mfs_solve(const Boundary& b, const PlaneWave& wave,
                   std::size_t m_src = 320, std::size_t m_col = 640, double tau = 0.85);

/// Far field of a solved model: sum of c^H_m exp(-i kappa xhat . y_m).
FarFieldVector mfs_farfield(const MfsModel& model, const std::vector<double>& angles,
                            Vec2 incident_direction = {});

/// Scattered Helmholtz part u^s_H at a field point, straight from the monopoles.
/// Used by mid-field asymptotic checks.
Complex mfs_field_h(const MfsModel& model, Vec2 x);

} // namespace esm
