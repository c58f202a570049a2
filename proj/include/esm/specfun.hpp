#pragma once

#include <complex>

// Real-argument cylinder functions used throughout the library.
//
// All functions accept any integer order; negative orders are mapped to
// non-negative ones by the reflection formulas
//   J_{-n} = (-1)^n J_n,  Y_{-n} = (-1)^n Y_n,  K_{-n} = K_n,  I_{-n} = I_n
// before the backend is invoked.

namespace esm::specfun {

using Complex = std::complex<double>;

/// Bessel function of the first kind J_n(x), x >= 0.
double bessel_j(int n, double x);

/// Bessel function of the second kind Y_n(x). Throws std::domain_error for x <= 0.
double bessel_y(int n, double x);

/// Hankel function of the first kind H_n^{(1)}(x) = J_n(x) + i Y_n(x), x > 0.
Complex hankel1(int n, double x);

/// Modified Bessel function K_n(x). Throws std::domain_error for x <= 0.
double bessel_k(int n, double x);

/// Modified Bessel function I_n(x), x >= 0.
double bessel_i(int n, double x);

// Derivatives via the standard recurrences:
//   J_n' = (J_{n-1} - J_{n+1})/2, same form for H^{(1)};
//   K_n' = -(K_{n-1} + K_{n+1})/2.
double bessel_j_deriv(int n, double x);
Complex hankel1_deriv(int n, double x);
double bessel_k_deriv(int n, double x);

} // namespace esm::specfun
