#include "subcover/svg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace subcover {

namespace {

// Boundary of a cell union as closed rectilinear rings. Directed border
// edges between a face cell and a non-face cell are linked corner to corner;
// interior holes come out as separate rings, which even-odd fill handles.
std::vector<std::vector<Point>> face_rings(const Subdivision& sub, const Face& face) {
    // Directed edges (from -> to) in grid-point coordinates, oriented so the
    // face is on the left.
    std::map<Point, std::vector<Point>> next;
    auto owner = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= sub.cols() || j >= sub.rows()) return Subdivision::kUnbounded;
        return sub.face_at_cell(i, j);
    };
    for (auto [i, j] : face.cells) {
        if (owner(i, j - 1) != face.id) next[{i, j}].push_back({i + 1, j});          // bottom
        if (owner(i + 1, j) != face.id) next[{i + 1, j}].push_back({i + 1, j + 1});  // right
        if (owner(i, j + 1) != face.id) next[{i + 1, j + 1}].push_back({i, j + 1});  // top
        if (owner(i - 1, j) != face.id) next[{i, j + 1}].push_back({i, j});          // left
    }
    std::vector<std::vector<Point>> rings;
    std::set<std::pair<Point, Point>> used;
    for (auto& [start, outs] : next) {
        for (const Point& first : outs) {
            if (used.count({start, first})) continue;
            std::vector<Point> ring{start};
            Point prev = start, cur = first;
            used.insert({start, first});
            while (cur != start) {
                ring.push_back(cur);
                auto& cands = next[cur];
                // At a pinch point several boundary loops share the grid
                // point; taking the tightest right turn stays on the current
                // loop, so touching holes come out as separate rings.
                Point dir{cur.x - prev.x, cur.y - prev.y};
                Point left{-dir.y, dir.x};
                Point straight = dir;
                Point right{dir.y, -dir.x};
                Point chosen{};
                bool found = false;
                for (const Point& d : {right, straight, left}) {
                    Point want{cur.x + d.x, cur.y + d.y};
                    for (const Point& cand : cands)
                        if (cand == want && !used.count({cur, cand})) {
                            chosen = cand;
                            found = true;
                            break;
                        }
                    if (found) break;
                }
                if (!found) break;  // degenerate; bail out with what we have
                used.insert({cur, chosen});
                prev = cur;
                cur = chosen;
            }
            rings.push_back(std::move(ring));
        }
    }
    return rings;
}

const char* class_fill(FaceClass c, bool rect) {
    switch (c) {
        case FaceClass::variable: return rect ? "#bcd8f0" : "#d8e8f6";
        case FaceClass::clause: return "#c4e8c4";
        case FaceClass::outer: return "#e8e8e8";
        case FaceClass::generic: break;
    }
    return rect ? "#f2e8c8" : "#f7f2e2";
}

}  // namespace

std::string render_svg(const Subdivision& sub, const SegmentSet& segs, const RenderOptions& opts) {
    const auto& xs = sub.xs();
    const auto& ys = sub.ys();
    const double s = opts.scale;
    const double pad = 1.5 * opts.scale;
    const coord_t x0 = xs.front(), x1 = xs.back();
    const coord_t y0 = ys.front(), y1 = ys.back();
    const double w = (x1 - x0) * s + 2 * pad, h = (y1 - y0) * s + 2 * pad;

    // Flip y so larger coordinates render upward.
    auto X = [&](double x) { return (x - x0) * s + pad; };
    auto Y = [&](double y) { return h - ((y - y0) * s + pad); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";

    std::set<int> hi(opts.highlight_faces.begin(), opts.highlight_faces.end());
    for (const Face& f : sub.faces()) {
        out << "  <path fill-rule=\"evenodd\" fill=\""
            << (hi.count(f.id) ? "#f0a050" : class_fill(f.face_class, f.is_rectangle))
            << "\" stroke=\"none\" d=\"";
        for (const auto& ring : face_rings(sub, f)) {
            for (std::size_t t = 0; t < ring.size(); ++t)
                out << (t == 0 ? "M" : "L") << X(xs[ring[t].x]) << " " << Y(ys[ring[t].y]) << " ";
            out << "Z ";
        }
        out << "\">\n    <title>face " << f.id << (f.is_rectangle ? " (rect)" : "") << "</title>\n"
            << "  </path>\n";
    }
    for (const Segment& sg : segs.segments()) {
        out << "  <line x1=\"" << X(sg.a.x) << "\" y1=\"" << Y(sg.a.y) << "\" x2=\"" << X(sg.b.x)
            << "\" y2=\"" << Y(sg.b.y) << "\" stroke=\"#303030\" stroke-width=\""
            << std::max(1.0, s / 10.0) << "\" stroke-linecap=\"square\"/>\n";
    }
    for (const Point& p : opts.highlight_points) {
        out << "  <circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << s / 3.0
            << "\" fill=\"#d03030\" stroke=\"white\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace subcover
