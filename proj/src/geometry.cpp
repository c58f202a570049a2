#include "esm/geometry.hpp"

#include "esm/errors.hpp"

#include <numbers>

namespace esm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ShapeKind shape_from_name(const std::string& name) {
    if (name == "disk") return ShapeKind::Disk;
    if (name == "star") return ShapeKind::Star;
    if (name == "peanut") return ShapeKind::Peanut;
    throw ConfigError("unknown shape \"" + name + "\" (expected disk, star or peanut)");
}

std::string shape_name(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Disk: return "disk";
        case ShapeKind::Star: return "star";
        case ShapeKind::Peanut: return "peanut";
    }
    return "?";
}

Boundary::Boundary(ShapeKind kind, Vec2 shift, double disk_radius)
    : kind_(kind), shift_(shift), radius_(disk_radius) {
    if (kind == ShapeKind::Disk && disk_radius <= 0.0)
        throw ConfigError("disk radius must be positive");
}

double Boundary::radial(double t) const {
    switch (kind_) {
        case ShapeKind::Disk: return radius_;
        case ShapeKind::Star: return 1.0 + 0.3 * std::cos(4.0 * t);
        case ShapeKind::Peanut: return 0.5 * std::sqrt(3.0 * std::cos(t) * std::cos(t) + 1.0);
    }
    return 0.0;
}

double Boundary::radial_deriv(double t) const {
    switch (kind_) {
        case ShapeKind::Disk: return 0.0;
        case ShapeKind::Star: return -1.2 * std::sin(4.0 * t);
        case ShapeKind::Peanut: {
            // r = 0.5 sqrt(q), q = 3 cos^2 t + 1  =>  r' = q' / (4 sqrt(q))
            const double q = 3.0 * std::cos(t) * std::cos(t) + 1.0;
            return 0.25 * (-6.0 * std::sin(t) * std::cos(t)) / std::sqrt(q);
        }
    }
    return 0.0;
}

Vec2 Boundary::point(double t) const {
    const double r = radial(t);
    return Vec2{r * std::cos(t), r * std::sin(t)} + shift_;
}

Vec2 Boundary::tangent(double t) const {
    const double r = radial(t), rp = radial_deriv(t);
    const double c = std::cos(t), s = std::sin(t);
    return {rp * c - r * s, rp * s + r * c};
}

Vec2 Boundary::normal(double t) const {
    // rotate the tangent by -90 degrees: (tx, ty) -> (ty, -tx)
    const Vec2 tan = tangent(t);
    const double len = tan.norm();
    Vec2 nu{tan.y / len, -tan.x / len};
    // orient outward relative to the curve center (radial parameterizations
    // are star-shaped about the shift point)
    const Vec2 radial_dir = point(t) - shift_;
    if (radial_dir.dot(nu) < 0.0) nu = nu * -1.0;
    return nu;
}

double Boundary::diameter(std::size_t m) const {
    if (m < 16) throw ConfigError("diameter: need at least 16 samples");
    std::vector<Vec2> pts(m);
    for (std::size_t i = 0; i < m; ++i)
        pts[i] = point(kTwoPi * static_cast<double>(i) / static_cast<double>(m));
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            best = std::max(best, (pts[i] - pts[j]).norm());
    return best;
}

DirectionSet named_direction_set(const std::string& name) {
    const double pi = std::numbers::pi;
    if (name == "S1_inc_1") return {{pi}};
    if (name == "S1_inc_2") return {{pi / 4.0, 3.0 * pi / 4.0}};
    if (name == "S1_inc_4") return {{0.0, pi / 2.0, pi, 3.0 * pi / 2.0}};
    throw ConfigError("unknown direction set \"" + name +
                      "\" (expected S1_inc_1, S1_inc_2 or S1_inc_4)");
}

std::vector<double> unit_circle_angles(std::size_t n) {
    if (n < 4) throw ConfigError("unit_circle_angles: need at least 4 angles");
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i)
        angles[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    return angles;
}

} // namespace esm
