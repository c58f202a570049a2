#pragma once

#include "esm/imaging.hpp"

#include <optional>
#include <string>

// Standalone raster heatmaps (binary PPM, P6). One pixel per grid node,
// linear color map over the valid nodes, a cross marker at the argmax and an
// optional circle overlay for the reconstructed disk.

namespace esm::cli {

struct CircleOverlay {
    Vec2 center{};
    double radius = 0.0;
};

void write_heatmap_ppm(const IndicatorGrid& g, const std::string& path,
                       std::optional<CircleOverlay> circle = std::nullopt);

} // namespace esm::cli
