#include "heatmap.hpp"

#include "esm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <vector>

namespace esm::cli {

namespace {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Compact viridis-like ramp, interpolated linearly between control points.
Rgb colormap(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{
        {68.0, 1.0, 84.0},
        {59.0, 82.0, 139.0},
        {33.0, 145.0, 140.0},
        {94.0, 201.0, 98.0},
        {253.0, 231.0, 37.0},
    }};
    t = std::clamp(t, 0.0, 1.0) * double(stops.size() - 1);
    const std::size_t lo = std::min(std::size_t(t), stops.size() - 2);
    const double w = t - double(lo);
    Rgb out;
    out.r = std::uint8_t(std::lround((1.0 - w) * stops[lo][0] + w * stops[lo + 1][0]));
    out.g = std::uint8_t(std::lround((1.0 - w) * stops[lo][1] + w * stops[lo + 1][1]));
    out.b = std::uint8_t(std::lround((1.0 - w) * stops[lo][2] + w * stops[lo + 1][2]));
    return out;
}

} // namespace

void write_heatmap_ppm(const IndicatorGrid& g, const std::string& path,
                       std::optional<CircleOverlay> circle) {
    const std::size_t nx = g.grid.nx, ny = g.grid.ny;

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (!g.valid[k]) continue;
        lo = std::min(lo, g.values[k]);
        hi = std::max(hi, g.values[k]);
    }
    const double span = hi > lo ? hi - lo : 1.0;

    // node index -> pixel, image row 0 at ymax
    std::vector<Rgb> pixels(nx * ny, Rgb{64, 64, 64}); // invalid nodes stay gray
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (!g.valid[k]) continue;
        const std::size_t ix = k % nx, iy = k / nx;
        pixels[(ny - 1 - iy) * nx + ix] = colormap((g.values[k] - lo) / span);
    }

    auto paint = [&](std::size_t ix, std::size_t iy, Rgb c) {
        if (ix < nx && iy < ny) pixels[(ny - 1 - iy) * nx + ix] = c;
    };

    if (circle) {
        // one-pixel ring where the node distance to the center crosses R
        const double dx = (g.grid.xmax - g.grid.xmin) / double(nx - 1);
        const double dy = (g.grid.ymax - g.grid.ymin) / double(ny - 1);
        const double thick = 0.5 * std::hypot(dx, dy);
        for (std::size_t k = 0; k < g.grid.size(); ++k) {
            const double d = (g.grid.node(k) - circle->center).norm();
            if (std::abs(d - circle->radius) <= thick)
                paint(k % nx, k / nx, Rgb{255, 255, 255});
        }
    }

    const std::size_t ax = g.argmax % nx, ay = g.argmax / nx;
    for (int off = -3; off <= 3; ++off) {
        paint(ax + std::size_t(off), ay, Rgb{255, 0, 0});
        paint(ax, ay + std::size_t(off), Rgb{255, 0, 0});
    }

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("heatmap: cannot open \"" + path + "\" for writing");
    out << "P6\n" << nx << ' ' << ny << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              std::streamsize(pixels.size() * sizeof(Rgb)));
}

} // namespace esm::cli
