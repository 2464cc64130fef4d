#pragma once

#include <string>

#include "subcover/solvers.hpp"
#include "subcover/subdivision.hpp"

namespace subcover {

struct RenderOptions {
    std::vector<Point> highlight_points;
    std::vector<int> highlight_faces;
    int scale = 16;  // pixels per coordinate unit
};

// SVG 1.1 drawing: one path per bounded face (holes via even-odd fill),
// colored by face class, the segments as strokes, and optional solution
// overlays (face fills and point markers).
std::string render_svg(const Subdivision& sub, const SegmentSet& segs,
                       const RenderOptions& opts = {});

}  // namespace subcover
