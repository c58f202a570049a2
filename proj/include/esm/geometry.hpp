#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace esm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

enum class ShapeKind { Disk, Star, Peanut };

ShapeKind shape_from_name(const std::string& name); // "disk" | "star" | "peanut"
std::string shape_name(ShapeKind kind);

// Parameterized closed boundary curve, optionally shifted.
//   disk:   x(t) = a (cos t, sin t)
//   star:   x(t) = (1 + 0.3 cos 4t)(cos t, sin t)
//   peanut: x(t) = 0.5 sqrt(3 cos^2 t + 1)(cos t, sin t)
class Boundary {
public:
    Boundary(ShapeKind kind, Vec2 shift = {}, double disk_radius = 1.0);

    ShapeKind kind() const { return kind_; }
    Vec2 shift() const { return shift_; }
    double disk_radius() const { return radius_; }

    /// Point on the (shifted) curve at parameter t in [0, 2pi).
    Vec2 point(double t) const;
    /// Curve derivative x'(t); never zero for the supported shapes.
    Vec2 tangent(double t) const;
    /// Unit outward normal at parameter t.
    Vec2 normal(double t) const;

    /// Max pairwise distance over m boundary samples, m >= 16.
    double diameter(std::size_t m = 256) const;

private:
    double radial(double t) const;      // r(t) for the star-shaped parameterization
    double radial_deriv(double t) const;

    ShapeKind kind_;
    Vec2 shift_;
    double radius_;
};

// Finite set of pairwise-distinct incident directions on the unit circle.
struct DirectionSet {
    std::vector<double> angles;

    std::size_t size() const { return angles.size(); }
    Vec2 direction(std::size_t i) const { return unit_vector(angles[i]); }
};

/// Named incident-direction sets: "S1_inc_1" = {pi}, "S1_inc_2" = {pi/4, 3pi/4},
/// "S1_inc_4" = {0, pi/2, pi, 3pi/2}.
DirectionSet named_direction_set(const std::string& name);

/// N equally spaced angles 2*pi*i/N, i = 0..N-1. Requires N >= 4.
std::vector<double> unit_circle_angles(std::size_t n);

// Rectangular sampling grid, nodes enumerated row-major (y outer, x inner).
struct SamplingGrid {
    double xmin = -4.0, xmax = 4.0;
    double ymin = -4.0, ymax = 4.0;
    std::size_t nx = 100, ny = 100;

    std::size_t size() const { return nx * ny; }
    Vec2 node(std::size_t k) const {
        const std::size_t iy = k / nx, ix = k % nx;
        return {xmin + (xmax - xmin) * static_cast<double>(ix) / static_cast<double>(nx - 1),
                ymin + (ymax - ymin) * static_cast<double>(iy) / static_cast<double>(ny - 1)};
    }
};

} // namespace esm
