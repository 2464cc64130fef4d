#pragma once

// Test-only oracles, independent of the library's construction and search
// code paths. The point-location oracle reruns the face labeling on a 2x
// refined grid, testing each step against the raw segment list; the solver
// oracles enumerate subsets outright.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "subcover/solvers.hpp"
#include "subcover/subdivision.hpp"

namespace oracle {

using subcover::coord_t;
using subcover::FaceFilter;
using subcover::Point;
using subcover::Segment;
using subcover::SegmentSet;
using subcover::Subdivision;

// Labels every half-unit cell of the bounding box (doubled coordinates, so
// everything stays integer) with a region id; -1 means the cell reaches the
// outside. A step between adjacent cells is blocked iff some input segment
// covers the shared half-unit border, checked directly against the segment
// list.
struct RefinedLabeling {
    coord_t x0, y0;     // doubled coordinates of the box corner
    int w = 0, h = 0;   // refined cells, each one doubled unit wide
    std::vector<int> label;
    int regions = 0;

    int at(int i, int j) const { return label[static_cast<std::size_t>(j) * w + i]; }
};

inline RefinedLabeling refined_point_location(const SegmentSet& segs) {
    coord_t xmin = INT64_MAX, xmax = INT64_MIN, ymin = INT64_MAX, ymax = INT64_MIN;
    for (const Segment& s : segs.segments()) {
        xmin = std::min({xmin, s.a.x, s.b.x});
        xmax = std::max({xmax, s.a.x, s.b.x});
        ymin = std::min({ymin, s.a.y, s.b.y});
        ymax = std::max({ymax, s.a.y, s.b.y});
    }
    RefinedLabeling rl;
    rl.x0 = 2 * xmin - 1;  // half a unit of margin, guaranteed outside
    rl.y0 = 2 * ymin - 1;
    rl.w = static_cast<int>(2 * (xmax - xmin)) + 2;
    rl.h = static_cast<int>(2 * (ymax - ymin)) + 2;
    rl.label.assign(static_cast<std::size_t>(rl.w) * rl.h, -2);

    // border between refined cells (i,j) and (i+1,j): the vertical half-unit
    // piece at doubled x = x0 + i + 1, doubled y in [y0+j, y0+j+1]
    auto blocked_v = [&](int i, int j) {
        coord_t bx = rl.x0 + i + 1;
        coord_t by0 = rl.y0 + j, by1 = by0 + 1;
        if (bx % 2 != 0) return false;  // off the integer grid lines
        for (const Segment& s : segs.segments())
            if (s.vertical() && 2 * s.a.x == bx && 2 * s.a.y <= by0 && by1 <= 2 * s.b.y)
                return true;
        return false;
    };
    auto blocked_h = [&](int i, int j) {
        coord_t by = rl.y0 + j + 1;
        coord_t bx0 = rl.x0 + i, bx1 = bx0 + 1;
        if (by % 2 != 0) return false;
        for (const Segment& s : segs.segments())
            if (s.horizontal() && 2 * s.a.y == by && 2 * s.a.x <= bx0 && bx1 <= 2 * s.b.x)
                return true;
        return false;
    };

    auto flood = [&](int si, int sj, int id) {
        std::queue<std::pair<int, int>> q;
        q.emplace(si, sj);
        rl.label[static_cast<std::size_t>(sj) * rl.w + si] = id;
        while (!q.empty()) {
            auto [i, j] = q.front();
            q.pop();
            auto push = [&](int ni, int nj) {
                if (ni < 0 || nj < 0 || ni >= rl.w || nj >= rl.h) return;
                auto& lab = rl.label[static_cast<std::size_t>(nj) * rl.w + ni];
                if (lab != -2) return;
                lab = id;
                q.emplace(ni, nj);
            };
            if (i + 1 < rl.w && !blocked_v(i, j)) push(i + 1, j);
            if (i - 1 >= 0 && !blocked_v(i - 1, j)) push(i - 1, j);
            if (j + 1 < rl.h && !blocked_h(i, j)) push(i, j + 1);
            if (j - 1 >= 0 && !blocked_h(i, j - 1)) push(i, j - 1);
        }
    };
    flood(0, 0, -1);  // the margin ring is outside by construction
    for (int j = 0; j < rl.h; ++j)
        for (int i = 0; i < rl.w; ++i)
            if (rl.at(i, j) == -2) flood(i, j, rl.regions++);
    return rl;
}

// Region id of the refined cell containing the open cell (ci, cj) of the
// subdivision's compressed grid.
inline int refined_label_of_cell(const RefinedLabeling& rl, const Subdivision& sub, int ci,
                                 int cj) {
    // first refined cell inside the compressed cell; cells are at least one
    // unit wide, so it lies strictly inside
    int i = static_cast<int>(2 * sub.xs()[ci] - rl.x0);
    int j = static_cast<int>(2 * sub.ys()[cj] - rl.y0);
    return rl.at(i, j);
}

// ---- brute-force solvers ----

inline std::vector<int> resolve(const Subdivision& sub, const FaceFilter& f) {
    return f.resolve(sub);
}

// minimum stabbing by vertices, enumerated by increasing subset size
inline std::size_t brute_force_stab(const Subdivision& sub, const FaceFilter& filter) {
    auto target = filter.resolve(sub);
    if (target.empty()) return 0;
    const int nv = static_cast<int>(sub.vertices().size());
    std::vector<std::vector<int>> cover(nv);
    for (int v = 0; v < nv; ++v) cover[v] = sub.faces_at_vertex(v);
    std::vector<int> pick;
    auto feasible = [&]() {
        std::set<int> got;
        for (int v : pick)
            for (int f : cover[v]) got.insert(f);
        for (int f : target)
            if (!got.count(f)) return false;
        return true;
    };
    for (std::size_t k = 1; k <= target.size(); ++k) {
        pick.assign(k, 0);
        // enumerate combinations of size k
        std::vector<int> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<int>(i);
        while (true) {
            pick.assign(c.begin(), c.end());
            if (feasible()) return k;
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && c[i] == nv - static_cast<int>(k - i)) i--;
            if (i < 0) break;
            c[i]++;
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return target.size();  // unreachable for valid subdivisions
}

inline std::size_t brute_force_mis(const Subdivision& sub, const FaceFilter& filter) {
    auto target = filter.resolve(sub);
    const std::size_t n = target.size();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> sel;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sel.push_back(target[i]);
        if (sel.size() <= best) continue;
        bool ok = true;
        for (std::size_t a = 0; a < sel.size() && ok; ++a)
            for (std::size_t b = a + 1; b < sel.size() && ok; ++b)
                if (sub.adjacent(sel[a], sel[b])) ok = false;
        if (ok) best = sel.size();
    }
    return best;
}

inline std::size_t brute_force_mds(const Subdivision& sub, const FaceFilter& filter) {
    auto target = filter.resolve(sub);
    const std::size_t n = target.size();
    std::set<int> tset(target.begin(), target.end());
    std::size_t best = n;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> sel;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sel.push_back(target[i]);
        if (sel.size() >= best) continue;
        std::set<int> dom(sel.begin(), sel.end());
        for (int f : sel)
            for (int g : sub.adjacency()[f])
                if (tset.count(g)) dom.insert(g);
        if (dom.size() == n) best = sel.size();
    }
    return best;
}

// Exhaustive check that no swap of up to k solution points for fewer
// vertices stays feasible. Replacement candidates only need to cover faces
// the removal uncovers: any minimal replacement uses such vertices only.
inline bool is_k_locally_optimal(const Subdivision& sub, const std::vector<Point>& points, int k,
                                 const FaceFilter& filter) {
    auto target = filter.resolve(sub);
    std::vector<int> x;
    for (const Point& p : points) x.push_back(*sub.vertex_index(p));
    std::sort(x.begin(), x.end());
    const int nv = static_cast<int>(sub.vertices().size());

    auto covered_by = [&](const std::vector<int>& vs) {
        std::set<int> got;
        for (int v : vs)
            for (int f : sub.faces_at_vertex(v)) got.insert(f);
        return got;
    };

    const int xs = static_cast<int>(x.size());
    for (int s = 1; s <= std::min(k, xs); ++s) {
        std::vector<int> c(s);
        for (int i = 0; i < s; ++i) c[i] = i;
        while (true) {
            std::vector<int> rest;
            for (int i = 0, t = 0; i < xs; ++i) {
                if (t < s && c[t] == i) { t++; continue; }
                rest.push_back(x[i]);
            }
            auto got = covered_by(rest);
            std::vector<int> deficit;
            for (int f : target)
                if (!got.count(f)) deficit.push_back(f);
            if (deficit.empty()) return false;  // plain shrink improves

            std::vector<int> cands;
            for (int v = 0; v < nv; ++v) {
                for (int f : sub.faces_at_vertex(v))
                    if (std::binary_search(deficit.begin(), deficit.end(), f)) {
                        cands.push_back(v);
                        break;
                    }
            }
            // any replacement of size < s over the candidates?
            const int nc = static_cast<int>(cands.size());
            for (int t = 1; t < s; ++t) {
                if (t > nc) break;
                std::vector<int> yc(t);
                for (int i = 0; i < t; ++i) yc[i] = i;
                while (true) {
                    std::set<int> got2;
                    for (int i = 0; i < t; ++i)
                        for (int f : sub.faces_at_vertex(cands[yc[i]])) got2.insert(f);
                    bool ok = true;
                    for (int f : deficit)
                        if (!got2.count(f)) { ok = false; break; }
                    if (ok) return false;  // improving swap exists
                    int i = t - 1;
                    while (i >= 0 && yc[i] == nc - (t - i)) i--;
                    if (i < 0) break;
                    yc[i]++;
                    for (int j = i + 1; j < t; ++j) yc[j] = yc[j - 1] + 1;
                }
            }
            int i = s - 1;
            while (i >= 0 && c[i] == xs - (s - i)) i--;
            if (i < 0) break;
            c[i]++;
            for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return true;
}

}  // namespace oracle
