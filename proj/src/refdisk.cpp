#include "esm/refdisk.hpp"

#include "esm/errors.hpp"
#include "esm/specfun.hpp"

#include <cmath>

namespace esm {

namespace sf = specfun;

namespace {
constexpr Complex kI{0.0, 1.0};

// Mode ratio of the reflected to incident cylinder amplitude at kR.
Complex mode_ratio(const RefDiskSpec& spec, int n) {
    const double kr = spec.kappa * spec.radius;
    switch (spec.kind) {
        case RefDiskKind::Dirichlet:
            return Complex(sf::bessel_j(n, kr)) / sf::hankel1(n, kr);
        case RefDiskKind::Neumann:
            return Complex(sf::bessel_j_deriv(n, kr)) / sf::hankel1_deriv(n, kr);
    }
    return {};
}

} // namespace

RefDiskKind refdisk_kind_from_name(const std::string& name) {
    if (name == "dirichlet") return RefDiskKind::Dirichlet;
    if (name == "neumann") return RefDiskKind::Neumann;
    throw ConfigError("unknown reference-disk kind \"" + name +
                      "\" (expected dirichlet or neumann)");
}

std::string refdisk_kind_name(RefDiskKind kind) {
    return kind == RefDiskKind::Dirichlet ? "dirichlet" : "neumann";
}

std::vector<Complex> mie_eigen_coefficients(const RefDiskSpec& spec) {
    std::vector<Complex> c(2 * spec.n_trunc + 1);
    const Complex front = -4.0 / kI;
    for (int n = 0; n <= spec.n_trunc; ++n) {
        const Complex cn = front * mode_ratio(spec, n);
        c[spec.n_trunc + n] = cn;
        c[spec.n_trunc - n] = cn;
    }
    return c;
}

Complex kernel_origin(const RefDiskSpec& spec, double theta_x, double theta_y) {
    const double delta = theta_x - theta_y;
    const Complex front = -4.0 / kI;
    Complex sum = mode_ratio(spec, 0);
    for (int n = 1; n <= spec.n_trunc; ++n)
        sum += 2.0 * mode_ratio(spec, n) * std::cos(double(n) * delta);
    return front * sum;
}

Complex kernel_translated(const RefDiskSpec& spec, Vec2 z, double theta_x, double theta_y) {
    const Vec2 diff = unit_vector(theta_x) - unit_vector(theta_y);
    const Complex phase = std::exp(-kI * (spec.kappa * z.dot(diff)));
    return phase * kernel_origin(spec, theta_x, theta_y);
}

ExclusionCheck eigenvalue_exclusion_check(const RefDiskSpec& spec, double tol) {
    const double kr = spec.kappa * spec.radius;
    ExclusionCheck result;
    double min_val = 0.0;
    // Only modes n <= kR can be near an interior eigenvalue: the first zero
    // of J_n (and of J_n' for n >= 1) lies above n, so higher modes are small
    // merely because they are evanescent, not because kappa^2 is resonant.
    const int n_scan = std::min(spec.n_trunc, static_cast<int>(std::floor(kr)));
    for (int n = 0; n <= n_scan; ++n) {
        const double v = spec.kind == RefDiskKind::Dirichlet
                             ? std::abs(sf::bessel_j(n, kr))
                             : std::abs(sf::bessel_j_deriv(n, kr));
        if (result.mode < 0 || v < min_val) {
            min_val = v;
            result.mode = n;
            result.value = v;
        }
    }
    result.ok = min_val >= tol;
    if (result.ok) result.mode = -1;
    return result;
}

} // namespace esm
