#include "subcover/generate.hpp"

#include <cassert>
#include <random>
#include <stdexcept>

namespace subcover {

namespace {

struct Room {
    coord_t x0, y0, x1, y1;
    bool splittable() const { return x1 - x0 >= 2 || y1 - y0 >= 2; }
};

SegmentSet guillotine(int rooms, std::uint64_t seed) {
    assert(rooms >= 1);
    std::mt19937_64 rng(seed);
    // Side length grows with the room count so a splittable room always
    // exists well before the area runs out.
    const coord_t side = std::max<coord_t>(4, 2 * rooms);
    std::vector<Room> leaves{{0, 0, side, side}};
    std::vector<Segment> segs;
    segs.emplace_back(Point{0, 0}, Point{side, 0});
    segs.emplace_back(Point{0, side}, Point{side, side});
    segs.emplace_back(Point{0, 0}, Point{0, side});
    segs.emplace_back(Point{side, 0}, Point{side, side});

    while (static_cast<int>(leaves.size()) < rooms) {
        std::vector<std::size_t> options;
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (leaves[i].splittable()) options.push_back(i);
        if (options.empty()) throw std::logic_error("guillotine ran out of splittable rooms");
        std::size_t at = options[rng() % options.size()];
        Room r = leaves[at];
        bool vertical = r.x1 - r.x0 >= 2 &&
                        (r.y1 - r.y0 < 2 || (rng() & 1) == 0 || r.x1 - r.x0 > r.y1 - r.y0);
        if (vertical) {
            coord_t cut = r.x0 + 1 + static_cast<coord_t>(rng() % (r.x1 - r.x0 - 1));
            segs.emplace_back(Point{cut, r.y0}, Point{cut, r.y1});
            leaves[at] = {r.x0, r.y0, cut, r.y1};
            leaves.push_back({cut, r.y0, r.x1, r.y1});
        } else {
            coord_t cut = r.y0 + 1 + static_cast<coord_t>(rng() % (r.y1 - r.y0 - 1));
            segs.emplace_back(Point{r.x0, cut}, Point{r.x1, cut});
            leaves[at] = {r.x0, r.y0, r.x1, cut};
            leaves.push_back({r.x0, cut, r.x1, r.y1});
        }
    }
    return SegmentSet(std::move(segs));
}

SegmentSet grid(int rows, int cols) {
    assert(rows >= 1 && cols >= 1);
    std::vector<Segment> segs;
    for (int j = 0; j <= rows; ++j)
        segs.emplace_back(Point{0, j}, Point{cols, j});
    for (int i = 0; i <= cols; ++i)
        segs.emplace_back(Point{i, 0}, Point{i, rows});
    return SegmentSet(std::move(segs));
}

}  // namespace

SegmentSet generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::guillotine:
            return guillotine(spec.rooms, spec.seed);
        case GeneratorSpec::Kind::grid:
            return grid(spec.rows, spec.cols);
        case GeneratorSpec::Kind::gadget:
            return variable_gadget_segments(spec.problem, spec.m, spec.variant);
    }
    throw std::logic_error("unknown generator kind");
}

}  // namespace subcover
