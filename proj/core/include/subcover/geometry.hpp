#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subcover {

using coord_t = std::int64_t;

struct Point {
    coord_t x = 0;
    coord_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

struct GeometryError : std::runtime_error {
    enum class Kind {
        non_axis_parallel,
        zero_length,
        empty_input,
        not_a_vertex,
        malformed_solution,
    };
    Kind kind;
    GeometryError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Axis-parallel segment, stored with a lexicographically smaller than b.
struct Segment {
    Point a, b;

    Segment() = default;
    Segment(Point p, Point q) : a(p), b(q) {
        if (a == b)
            throw GeometryError(GeometryError::Kind::zero_length, "zero-length segment");
        if (a.x != b.x && a.y != b.y)
            throw GeometryError(GeometryError::Kind::non_axis_parallel, "segment is not axis-parallel");
        if (b < a) std::swap(a, b);
    }

    bool vertical() const { return a.x == b.x; }
    bool horizontal() const { return a.y == b.y; }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

// Validated list of axis-parallel segments. Exact duplicates are dropped
// silently; overlapping collinear segments are legal and get unioned when a
// subdivision is built from the set.
class SegmentSet {
public:
    SegmentSet() = default;

    explicit SegmentSet(std::vector<Segment> segs) : segments_(std::move(segs)) {
        normalize();
    }

    // Convenience: each entry is {x1, y1, x2, y2}.
    static SegmentSet from_coords(const std::vector<std::array<coord_t, 4>>& quads);

    const std::vector<Segment>& segments() const { return segments_; }
    std::size_t size() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }

    void add(const Segment& s) { segments_.push_back(s); dirty_ = true; }
    void add(Point p, Point q) { add(Segment(p, q)); }

    // Sorts and deduplicates. Called by the constructor and by consumers that
    // need a canonical order (serialization, hashing).
    void normalize();

    // Translate every segment by (dx, dy).
    SegmentSet translated(coord_t dx, coord_t dy) const;

    friend bool operator==(const SegmentSet&, const SegmentSet&) = default;

private:
    std::vector<Segment> segments_;
    bool dirty_ = false;
};

}  // namespace subcover
