#include <array>
#include <random>
#include <set>
#include <thread>

#include "doctest.h"
#include "oracles.hpp"
#include "subcover/subdivision.hpp"

using namespace subcover;

namespace {

SegmentSet unit_square() {
    return SegmentSet::from_coords({{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}, {1, 0, 0, 0}});
}

SegmentSet grid_2x2() {
    return SegmentSet::from_coords({{0, 0, 2, 0},
                                    {0, 1, 2, 1},
                                    {0, 2, 2, 2},
                                    {0, 0, 0, 2},
                                    {1, 0, 1, 2},
                                    {2, 0, 2, 2}});
}

SegmentSet strip_1x3() {
    return SegmentSet::from_coords({{0, 0, 3, 0},
                                    {0, 1, 3, 1},
                                    {0, 0, 0, 1},
                                    {1, 0, 1, 1},
                                    {2, 0, 2, 1},
                                    {3, 0, 3, 1}});
}

}  // namespace

TEST_CASE("segment validation") {
    CHECK_THROWS_AS(Segment(Point{0, 0}, Point{1, 1}), GeometryError);
    CHECK_THROWS_AS(Segment(Point{2, 3}, Point{2, 3}), GeometryError);
    Segment s(Point{5, 2}, Point{1, 2});
    CHECK(s.a == Point{1, 2});  // normalized
    CHECK(s.horizontal());
}

TEST_CASE("duplicate segments are dropped") {
    SegmentSet set = SegmentSet::from_coords({{0, 0, 2, 0}, {2, 0, 0, 0}, {0, 0, 2, 0}});
    CHECK(set.size() == 1);
}

TEST_CASE("empty input rejected") {
    CHECK_THROWS_AS(build_subdivision(SegmentSet{}), GeometryError);
}

TEST_CASE("unit square: one face, four vertices") {
    auto sub = build_subdivision(unit_square());
    CHECK(sub.face_count() == 1);
    CHECK(sub.vertices().size() == 4);
    CHECK(sub.faces()[0].is_rectangle);
    CHECK(stabbed_faces(sub, {0, 0}) == std::vector<int>{0});
    CHECK(face_adjacency(sub).empty());
}

TEST_CASE("2x2 grid: faces, Euler counts, stabbing, adjacency") {
    auto sub = build_subdivision(grid_2x2());
    CHECK(sub.face_count() == 4);
    CHECK(sub.graph_vertex_count() == 9);
    CHECK(sub.graph_edge_count() == 12);
    CHECK(sub.graph_component_count() == 1);

    // center vertex stabs all four closed faces
    auto center = stabbed_faces(sub, {1, 1});
    CHECK(center.size() == 4);

    // all six pairs adjacent (they share the center)
    CHECK(face_adjacency(sub).size() == 6);
    CHECK(rectangular_faces(sub).size() == 4);

    CHECK_THROWS_AS(stabbed_faces(sub, {7, 7}), GeometryError);
}

TEST_CASE("1x3 strip: stabbing pairs and adjacency chain") {
    auto sub = build_subdivision(strip_1x3());
    CHECK(sub.face_count() == 3);
    auto two = stabbed_faces(sub, {1, 0});
    CHECK(two.size() == 2);
    auto pairs = face_adjacency(sub);
    CHECK(pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("slit disqualifies a face from being rectangular") {
    // square with a dangling interior segment
    SegmentSet big = SegmentSet::from_coords(
        {{0, 0, 0, 4}, {0, 4, 4, 4}, {4, 4, 4, 0}, {4, 0, 0, 0}, {2, 1, 2, 3}});
    auto sub = build_subdivision(big);
    CHECK(sub.face_count() == 1);  // slit does not split the face
    CHECK_FALSE(sub.faces()[0].is_rectangle);
    CHECK(rectangular_faces(sub).empty());
}

TEST_CASE("L-shaped face is not rectangular") {
    SegmentSet segs = SegmentSet::from_coords({{0, 0, 2, 0},
                                               {2, 0, 2, 1},
                                               {2, 1, 1, 1},
                                               {1, 1, 1, 2},
                                               {1, 2, 0, 2},
                                               {0, 2, 0, 0}});
    auto sub = build_subdivision(segs);
    CHECK(sub.face_count() == 1);
    CHECK_FALSE(sub.faces()[0].is_rectangle);
}

TEST_CASE("floating island makes a hole, face stays non-rectangular") {
    SegmentSet segs = SegmentSet::from_coords({{0, 0, 6, 0},
                                               {6, 0, 6, 6},
                                               {6, 6, 0, 6},
                                               {0, 6, 0, 0},
                                               // island square
                                               {2, 2, 4, 2},
                                               {4, 2, 4, 4},
                                               {4, 4, 2, 4},
                                               {2, 4, 2, 2}});
    auto sub = build_subdivision(segs);
    CHECK(sub.face_count() == 2);
    int outer = sub.face_at_cell(0, 0);
    int inner = sub.face_at_cell(1, 1);
    CHECK(outer != inner);
    CHECK_FALSE(sub.faces()[outer].is_rectangle);
    CHECK(sub.faces()[inner].is_rectangle);
    CHECK(sub.adjacent(outer, inner));  // closures share the island boundary
    CHECK(sub.graph_component_count() == 2);
}

TEST_CASE("single segment: no bounded face, Euler still consistent") {
    auto sub = build_subdivision(SegmentSet::from_coords({{0, 0, 0, 5}}));
    CHECK(sub.face_count() == 0);
    CHECK(sub.graph_vertex_count() == 2);
    CHECK(sub.graph_edge_count() == 1);
}

TEST_CASE("collinear overlapping segments are unioned") {
    // two overlapping horizontals plus a crossing vertical
    auto sub = build_subdivision(
        SegmentSet::from_coords({{0, 0, 3, 0}, {2, 0, 5, 0}, {4, -1, 4, 1}}));
    CHECK(sub.face_count() == 0);
    // vertices: endpoints (0,0),(3,0),(2,0),(5,0),(4,-1),(4,1) + crossing (4,0)
    CHECK(sub.graph_vertex_count() == 7);
    // one unioned horizontal through 5 of them (4 edges) + vertical split in two
    CHECK(sub.graph_edge_count() == 6);
    CHECK(sub.graph_component_count() == 1);
}

TEST_CASE("translation invariance") {
    auto base = grid_2x2();
    auto sub0 = build_subdivision(base);
    auto sub1 = build_subdivision(base.translated(17, -9));
    CHECK(sub0.face_count() == sub1.face_count());
    CHECK(rectangular_faces(sub0).size() == rectangular_faces(sub1).size());
    CHECK(face_adjacency(sub0) == face_adjacency(sub1));
}

TEST_CASE("vertex stabbing bound: at most four faces") {
    auto sub = build_subdivision(grid_2x2());
    for (std::size_t v = 0; v < sub.vertices().size(); ++v)
        CHECK(sub.faces_at_vertex(static_cast<int>(v)).size() <= 4);
}

TEST_CASE("face cell sets partition the compressed grid") {
    for (const SegmentSet& segs : {grid_2x2(), strip_1x3()}) {
        auto sub = build_subdivision(segs);
        std::size_t assigned = 0;
        for (const Face& f : sub.faces()) {
            for (auto [i, j] : f.cells) CHECK(sub.face_at_cell(i, j) == f.id);
            assigned += f.cells.size();
        }
        std::size_t unbounded = 0;
        for (int j = 0; j < sub.rows(); ++j)
            for (int i = 0; i < sub.cols(); ++i)
                if (sub.face_at_cell(i, j) == Subdivision::kUnbounded) unbounded++;
        CHECK(assigned + unbounded ==
              static_cast<std::size_t>(sub.cols()) * static_cast<std::size_t>(sub.rows()));
    }
}

namespace {

// Labels must agree up to a bijection between face ids and oracle region ids.
bool labelings_match(const Subdivision& sub, const SegmentSet& segs) {
    auto rl = oracle::refined_point_location(segs);
    std::map<int, int> fwd, rev;
    for (int j = 0; j < sub.rows(); ++j)
        for (int i = 0; i < sub.cols(); ++i) {
            int got = sub.face_at_cell(i, j);
            int want = oracle::refined_label_of_cell(rl, sub, i, j);
            if (got == Subdivision::kUnbounded) {
                if (want != -1) return false;
                continue;
            }
            if (want == -1) return false;
            auto [it, f_new] = fwd.try_emplace(got, want);
            auto [rit, r_new] = rev.try_emplace(want, got);
            if (it->second != want || rit->second != got) return false;
        }
    return true;
}

// Seeded soup of axis-parallel segments: crossings, T-contacts, overlaps,
// slits and islands all appear at these densities.
SegmentSet random_soup(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Segment> segs;
    while (static_cast<int>(segs.size()) < count) {
        coord_t x = static_cast<coord_t>(rng() % 13);
        coord_t y = static_cast<coord_t>(rng() % 13);
        coord_t len = 1 + static_cast<coord_t>(rng() % 8);
        if (rng() & 1)
            segs.emplace_back(Point{x, y}, Point{x + len, y});
        else
            segs.emplace_back(Point{x, y}, Point{x, y + len});
    }
    return SegmentSet(std::move(segs));
}

}  // namespace

TEST_CASE("point location matches the refined oracle") {
    for (const SegmentSet& segs : {unit_square(), grid_2x2(), strip_1x3()}) {
        auto sub = build_subdivision(segs);
        CHECK(labelings_match(sub, segs));
    }
}

TEST_CASE("random segment soups: oracle equivalence and invariants") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        for (int count : {4, 9, 16}) {
            SegmentSet segs = random_soup(seed * 100 + count, count);
            CAPTURE(seed);
            CAPTURE(count);
            // construction validates the Euler identity internally
            auto sub = build_subdivision(segs);
            REQUIRE(labelings_match(sub, segs));
            for (std::size_t v = 0; v < sub.vertices().size(); ++v)
                REQUIRE(sub.faces_at_vertex(static_cast<int>(v)).size() <= 4);
            // adjacency is symmetric and irreflexive
            for (int f = 0; f < sub.face_count(); ++f)
                for (int g : sub.adjacency()[f]) {
                    REQUIRE(g != f);
                    REQUIRE(sub.adjacent(g, f));
                }
        }
    }
}

TEST_CASE("independent subdivisions build concurrently") {
    std::array<int, 6> faces{};
    std::vector<std::thread> workers;
    for (int t = 0; t < 6; ++t)
        workers.emplace_back([&faces, t] {
            faces[t] = build_subdivision(random_soup(500 + t, 14)).face_count();
        });
    for (auto& w : workers) w.join();
    for (int t = 0; t < 6; ++t)
        CHECK(faces[t] == build_subdivision(random_soup(500 + t, 14)).face_count());
}
