#include "subcover/subdivision.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace subcover {

namespace {

int index_of(const std::vector<coord_t>& v, coord_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    assert(it != v.end() && *it == x);
    return static_cast<int>(it - v.begin());
}

// Maximal intervals of the union of collinear segments, keyed by the fixed
// coordinate. Touching intervals are merged: [0,1] and [1,2] become [0,2].
std::map<coord_t, std::vector<std::pair<coord_t, coord_t>>> union_intervals(
    const std::vector<Segment>& segs, bool vertical) {
    std::map<coord_t, std::vector<std::pair<coord_t, coord_t>>> by_line;
    for (const auto& s : segs) {
        if (s.vertical() != vertical) continue;
        if (vertical)
            by_line[s.a.x].emplace_back(s.a.y, s.b.y);
        else
            by_line[s.a.y].emplace_back(s.a.x, s.b.x);
    }
    for (auto& [line, ivs] : by_line) {
        std::sort(ivs.begin(), ivs.end());
        std::vector<std::pair<coord_t, coord_t>> merged;
        for (const auto& iv : ivs) {
            if (!merged.empty() && iv.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        ivs = std::move(merged);
    }
    return by_line;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Subdivision build_subdivision(const SegmentSet& s) {
    if (s.empty())
        throw GeometryError(GeometryError::Kind::empty_input, "segment set is empty");

    Subdivision sub;
    const auto& segs = s.segments();

    auto v_ivs = union_intervals(segs, true);
    auto h_ivs = union_intervals(segs, false);

    // Vertices: all endpoints plus crossings of the unioned lines. Crossing
    // coordinates are endpoint coordinates on each axis, so the compressed
    // axes come from endpoints alone.
    std::vector<Point> verts;
    for (const auto& sg : segs) {
        verts.push_back(sg.a);
        verts.push_back(sg.b);
    }
    for (const auto& [x, vys] : v_ivs)
        for (const auto& [hy, hxs] : h_ivs)
            for (const auto& viv : vys) {
                if (hy < viv.first || hy > viv.second) continue;
                for (const auto& hiv : hxs)
                    if (hiv.first <= x && x <= hiv.second) verts.push_back({x, hy});
            }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    sub.vertices_ = std::move(verts);

    for (const auto& sg : segs) {
        sub.xs_.push_back(sg.a.x);
        sub.xs_.push_back(sg.b.x);
        sub.ys_.push_back(sg.a.y);
        sub.ys_.push_back(sg.b.y);
    }
    auto compress = [](std::vector<coord_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    compress(sub.xs_);
    compress(sub.ys_);

    const int cols = sub.cols();
    const int rows = sub.rows();

    sub.blocked_v_.assign(static_cast<std::size_t>(cols + 1) * std::max(rows, 0), false);
    sub.blocked_h_.assign(static_cast<std::size_t>(rows + 1) * std::max(cols, 0), false);
    if (rows > 0)
        for (const auto& [x, ivs] : v_ivs) {
            int i = index_of(sub.xs_, x);
            for (const auto& iv : ivs) {
                int j0 = index_of(sub.ys_, iv.first);
                int j1 = index_of(sub.ys_, iv.second);
                for (int j = j0; j < j1; ++j)
                    sub.blocked_v_[static_cast<std::size_t>(i) * rows + j] = true;
            }
        }
    if (cols > 0)
        for (const auto& [y, ivs] : h_ivs) {
            int j = index_of(sub.ys_, y);
            for (const auto& iv : ivs) {
                int i0 = index_of(sub.xs_, iv.first);
                int i1 = index_of(sub.xs_, iv.second);
                for (int i = i0; i < i1; ++i)
                    sub.blocked_h_[static_cast<std::size_t>(j) * cols + i] = true;
            }
        }

    // Flood fill. First mark everything connected to the unbounded region,
    // then label the remaining components as bounded faces in scan order.
    const std::size_t ncells = static_cast<std::size_t>(std::max(cols, 0)) * std::max(rows, 0);
    constexpr int kUnlabeled = -2;
    sub.cell_face_.assign(ncells, kUnlabeled);

    auto blocked_between = [&](int i, int j, int di, int dj) {
        // Border between cell (i,j) and cell (i+di, j+dj).
        if (di == -1) return sub.blocked_v_[static_cast<std::size_t>(i) * rows + j];
        if (di == 1) return sub.blocked_v_[static_cast<std::size_t>(i + 1) * rows + j];
        if (dj == -1) return sub.blocked_h_[static_cast<std::size_t>(j) * cols + i];
        return sub.blocked_h_[static_cast<std::size_t>(j + 1) * cols + i];
    };

    auto flood = [&](int si, int sj, int label) {
        std::queue<std::pair<int, int>> q;
        q.emplace(si, sj);
        sub.cell_face_[sub.idx(si, sj)] = label;
        static constexpr int D[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
        while (!q.empty()) {
            auto [i, j] = q.front();
            q.pop();
            for (const auto& d : D) {
                int ni = i + d[0], nj = j + d[1];
                if (ni < 0 || nj < 0 || ni >= cols || nj >= rows) continue;
                if (sub.cell_face_[sub.idx(ni, nj)] != kUnlabeled) continue;
                if (blocked_between(i, j, d[0], d[1])) continue;
                sub.cell_face_[sub.idx(ni, nj)] = label;
                q.emplace(ni, nj);
            }
        }
    };

    if (ncells > 0) {
        for (int j = 0; j < rows; ++j)
            for (int i = 0; i < cols; ++i) {
                if (sub.cell_face_[sub.idx(i, j)] != kUnlabeled) continue;
                bool open_out =
                    (i == 0 && !sub.blocked_v_[static_cast<std::size_t>(0) * rows + j]) ||
                    (i == cols - 1 && !sub.blocked_v_[static_cast<std::size_t>(cols) * rows + j]) ||
                    (j == 0 && !sub.blocked_h_[static_cast<std::size_t>(0) * cols + i]) ||
                    (j == rows - 1 && !sub.blocked_h_[static_cast<std::size_t>(rows) * cols + i]);
                if (open_out) flood(i, j, Subdivision::kUnbounded);
            }
        for (int j = 0; j < rows; ++j)
            for (int i = 0; i < cols; ++i) {
                if (sub.cell_face_[sub.idx(i, j)] != kUnlabeled) continue;
                int id = static_cast<int>(sub.faces_.size());
                sub.faces_.push_back(Face{id, {}, i, i, j, j, false, FaceClass::generic});
                flood(i, j, id);
            }
        for (int j = 0; j < rows; ++j)
            for (int i = 0; i < cols; ++i) {
                int f = sub.cell_face_[sub.idx(i, j)];
                if (f < 0) continue;
                Face& face = sub.faces_[f];
                face.cells.emplace_back(i, j);
                face.i0 = std::min(face.i0, i);
                face.i1 = std::max(face.i1, i);
                face.j0 = std::min(face.j0, j);
                face.j1 = std::max(face.j1, j);
            }
    }

    for (Face& f : sub.faces_) {
        std::size_t box = static_cast<std::size_t>(f.i1 - f.i0 + 1) * (f.j1 - f.j0 + 1);
        bool rect = f.cells.size() == box;
        for (int i = f.i0 + 1; rect && i <= f.i1; ++i)
            for (int j = f.j0; j <= f.j1; ++j)
                if (sub.blocked_v_[static_cast<std::size_t>(i) * rows + j]) { rect = false; break; }
        for (int j = f.j0 + 1; rect && j <= f.j1; ++j)
            for (int i = f.i0; i <= f.i1; ++i)
                if (sub.blocked_h_[static_cast<std::size_t>(j) * cols + i]) { rect = false; break; }
        f.is_rectangle = rect;
    }

    // Faces incident to each vertex: owners of the at most four cells around
    // the grid point. This is also the closed-face stabbing set.
    auto faces_around = [&](int gi, int gj) {
        std::vector<int> out;
        for (int di = -1; di <= 0; ++di)
            for (int dj = -1; dj <= 0; ++dj) {
                int i = gi + di, j = gj + dj;
                if (i < 0 || j < 0 || i >= cols || j >= rows) continue;
                int f = sub.cell_face_[sub.idx(i, j)];
                if (f >= 0) out.push_back(f);
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    sub.vertex_faces_.reserve(sub.vertices_.size());
    for (const Point& p : sub.vertices_)
        sub.vertex_faces_.push_back(faces_around(index_of(sub.xs_, p.x), index_of(sub.ys_, p.y)));

    // Adjacency: two faces are adjacent iff their closures intersect, i.e.
    // they own cells within Chebyshev distance 1. Every such contact shows up
    // around some grid point.
    std::vector<std::pair<int, int>> pairs;
    for (int gj = 0; gj <= rows; ++gj)
        for (int gi = 0; gi <= cols; ++gi) {
            auto fs = faces_around(gi, gj);
            for (std::size_t a = 0; a < fs.size(); ++a)
                for (std::size_t b = a + 1; b < fs.size(); ++b)
                    pairs.emplace_back(fs[a], fs[b]);
        }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    sub.adjacency_.assign(sub.faces_.size(), {});
    for (auto [a, b] : pairs) {
        sub.adjacency_[a].push_back(b);
        sub.adjacency_[b].push_back(a);
    }
    for (auto& nbrs : sub.adjacency_) std::sort(nbrs.begin(), nbrs.end());

    // Planar graph counts for the Euler identity. Edges are the pieces of the
    // union between consecutive vertices along each maximal interval.
    std::map<coord_t, std::vector<coord_t>> xs_at_y, ys_at_x;
    for (const Point& p : sub.vertices_) {
        xs_at_y[p.y].push_back(p.x);
        ys_at_x[p.x].push_back(p.y);
    }
    std::map<Point, int> vid;
    for (std::size_t i = 0; i < sub.vertices_.size(); ++i)
        vid[sub.vertices_[i]] = static_cast<int>(i);

    UnionFind uf(sub.vertices_.size());
    std::size_t edges = 0;
    for (const auto& [y, ivs] : h_ivs) {
        const auto& vx = xs_at_y[y];  // sorted: vertices are sorted by (x, y)? per-y list built in vertex order
        for (const auto& iv : ivs) {
            auto lo = std::lower_bound(vx.begin(), vx.end(), iv.first);
            auto hi = std::upper_bound(vx.begin(), vx.end(), iv.second);
            for (auto it = lo; it != hi; ++it) {
                if (it != lo) {
                    edges++;
                    uf.merge(vid[{*std::prev(it), y}], vid[{*it, y}]);
                }
            }
        }
    }
    for (const auto& [x, ivs] : v_ivs) {
        auto& vy = ys_at_x[x];
        std::sort(vy.begin(), vy.end());
        for (const auto& iv : ivs) {
            auto lo = std::lower_bound(vy.begin(), vy.end(), iv.first);
            auto hi = std::upper_bound(vy.begin(), vy.end(), iv.second);
            for (auto it = lo; it != hi; ++it) {
                if (it != lo) {
                    edges++;
                    uf.merge(vid[{x, *std::prev(it)}], vid[{x, *it}]);
                }
            }
        }
    }
    sub.edge_count_ = edges;
    std::size_t comps = 0;
    for (std::size_t i = 0; i < sub.vertices_.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) comps++;
    sub.component_count_ = comps;

    // Euler identity: bounded faces == E - V + C. A mismatch means the
    // construction itself is broken, so fail loudly.
    long long expect = static_cast<long long>(edges) - static_cast<long long>(sub.vertices_.size()) +
                       static_cast<long long>(comps);
    if (expect != static_cast<long long>(sub.faces_.size()))
        throw std::logic_error("subdivision Euler check failed");

    return sub;
}

std::optional<int> Subdivision::vertex_index(Point p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
    if (it == vertices_.end() || *it != p) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

bool Subdivision::adjacent(int f, int g) const {
    const auto& nbrs = adjacency_[f];
    return std::binary_search(nbrs.begin(), nbrs.end(), g);
}

std::vector<int> stabbed_faces(const Subdivision& sub, Point p) {
    auto v = sub.vertex_index(p);
    if (!v)
        throw GeometryError(GeometryError::Kind::not_a_vertex,
                            "point is not a vertex of the subdivision");
    return sub.faces_at_vertex(*v);
}

std::vector<std::pair<int, int>> face_adjacency(const Subdivision& sub) {
    std::vector<std::pair<int, int>> pairs;
    for (int f = 0; f < sub.face_count(); ++f)
        for (int g : sub.adjacency()[f])
            if (f < g) pairs.emplace_back(f, g);
    return pairs;
}

std::vector<int> rectangular_faces(const Subdivision& sub) {
    std::vector<int> out;
    for (const Face& f : sub.faces())
        if (f.is_rectangle) out.push_back(f.id);
    return out;
}

std::vector<int> FaceFilter::resolve(const Subdivision& sub) const {
    switch (kind) {
        case Kind::all: {
            std::vector<int> out(sub.face_count());
            std::iota(out.begin(), out.end(), 0);
            return out;
        }
        case Kind::rect:
            return rectangular_faces(sub);
        case Kind::subset: {
            std::vector<int> out = subset;
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            for (int f : out)
                if (f < 0 || f >= sub.face_count())
                    throw GeometryError(GeometryError::Kind::malformed_solution,
                                        "face id out of range in filter");
            return out;
        }
    }
    return {};
}

}  // namespace subcover
