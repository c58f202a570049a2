#include "esm/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esm::specfun {

namespace {

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

[[noreturn]] void domain_fail(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

} // namespace

double bessel_j(int n, double x) {
    if (n < 0) return parity_sign(n) * bessel_j(-n, x);
    return std::cyl_bessel_j(static_cast<double>(n), x);
}

double bessel_y(int n, double x) {
    if (x <= 0.0) domain_fail("bessel_y", x);
    if (n < 0) return parity_sign(n) * bessel_y(-n, x);
    return std::cyl_neumann(static_cast<double>(n), x);
}

Complex hankel1(int n, double x) {
    if (x <= 0.0) domain_fail("hankel1", x);
    return {bessel_j(n, x), bessel_y(n, x)};
}

double bessel_k(int n, double x) {
    if (x <= 0.0) domain_fail("bessel_k", x);
    if (n < 0) n = -n;
    return std::cyl_bessel_k(static_cast<double>(n), x);
}

double bessel_i(int n, double x) {
    if (n < 0) n = -n;
    return std::cyl_bessel_i(static_cast<double>(n), x);
}

double bessel_j_deriv(int n, double x) {
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

Complex hankel1_deriv(int n, double x) {
    return 0.5 * (hankel1(n - 1, x) - hankel1(n + 1, x));
}

double bessel_k_deriv(int n, double x) {
    return -0.5 * (bessel_k(n - 1, x) + bessel_k(n + 1, x));
}

} // namespace esm::specfun
