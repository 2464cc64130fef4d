#include "subcover/geometry.hpp"

#include <algorithm>

namespace subcover {

SegmentSet SegmentSet::from_coords(const std::vector<std::array<coord_t, 4>>& quads) {
    std::vector<Segment> segs;
    segs.reserve(quads.size());
    for (const auto& q : quads)
        segs.emplace_back(Point{q[0], q[1]}, Point{q[2], q[3]});
    return SegmentSet(std::move(segs));
}

void SegmentSet::normalize() {
    std::sort(segments_.begin(), segments_.end());
    segments_.erase(std::unique(segments_.begin(), segments_.end()), segments_.end());
    dirty_ = false;
}

SegmentSet SegmentSet::translated(coord_t dx, coord_t dy) const {
    std::vector<Segment> segs;
    segs.reserve(segments_.size());
    for (const auto& s : segments_)
        segs.emplace_back(Point{s.a.x + dx, s.a.y + dy}, Point{s.b.x + dx, s.b.y + dy});
    return SegmentSet(std::move(segs));
}

}  // namespace subcover
