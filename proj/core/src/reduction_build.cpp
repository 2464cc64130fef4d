#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "reduction_internal.hpp"

namespace subcover {

using detail::LayoutPlan;
using detail::PlannedClause;
using detail::plan_layout;

namespace {

struct Box {
    std::string name;
    FaceClass cls = FaceClass::variable;
    int gadget = 0;
    int clause = 0;
    coord_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool expect_rect = true;
    Point sample;  // a point whose upper-right cell lies inside the face
    int face = -1;
};

struct Builder {
    std::vector<Segment> segs;
    std::vector<Box> boxes;

    void seg(coord_t x1, coord_t y1, coord_t x2, coord_t y2) {
        segs.emplace_back(Point{x1, y1}, Point{x2, y2});
    }

    void box_segs(coord_t x0, coord_t y0, coord_t x1, coord_t y1) {
        seg(x0, y0, x1, y0);
        seg(x0, y1, x1, y1);
        seg(x0, y0, x0, y1);
        seg(x1, y0, x1, y1);
    }

    Box& add_box(std::string name, FaceClass cls, int gadget, int clause, coord_t x0, coord_t y0,
                 coord_t x1, coord_t y1, bool expect_rect = true) {
        boxes.push_back({std::move(name), cls, gadget, clause, x0, y0, x1, y1, expect_rect,
                         Point{x0, y0}, -1});
        return boxes.back();
    }

    // Emit a horizontal line with open gaps removed.
    void broken_h(coord_t y, coord_t xa, coord_t xb, std::vector<std::pair<coord_t, coord_t>> gaps) {
        std::sort(gaps.begin(), gaps.end());
        coord_t at = xa;
        for (auto [g0, g1] : gaps) {
            if (g0 > at) seg(at, y, g0, y);
            at = std::max(at, g1);
        }
        if (at < xb) seg(at, y, xb, y);
    }
};

int cell_index(const std::vector<coord_t>& axis, coord_t v) {
    auto it = std::lower_bound(axis.begin(), axis.end(), v);
    assert(it != axis.end() && *it == v);
    return static_cast<int>(it - axis.begin());
}

// Resolve boxes against the built subdivision, fill the manifest, classify
// leftover faces as outer, and run the generator self-checks.
void finish(ReductionOutput& out, Builder& b, bool any_pierced) {
    out.segments = SegmentSet(std::move(b.segs));
    out.subdivision = build_subdivision(out.segments);
    const Subdivision& sub = out.subdivision;

    std::vector<char> named(sub.face_count(), 0);
    out.manifest.clear();
    for (Box& box : b.boxes) {
        int ci = cell_index(sub.xs(), box.sample.x);
        int cj = cell_index(sub.ys(), box.sample.y);
        box.face = sub.face_at_cell(ci, cj);
        if (box.face < 0 || named[box.face])
            throw std::logic_error("gadget face resolution failed for " + box.name);
        if (sub.faces()[box.face].is_rectangle != box.expect_rect)
            throw std::logic_error("unexpected rectangle flag on " + box.name);
        named[box.face] = 1;
        out.manifest.push_back({box.face, box.cls, box.gadget, box.clause, box.name});
        out.subdivision.set_face_class(box.face, box.cls);
    }
    int outer_n = 0;
    for (int f = 0; f < sub.face_count(); ++f) {
        if (named[f]) continue;
        // Unclaimed faces are background regions between gadgets. They must
        // never be rectangular, otherwise they would silently join the
        // rect-variant target set and the layout constants need adjusting.
        if (sub.faces()[f].is_rectangle && !any_pierced)
            throw std::logic_error("accidental rectangular background face");
        out.manifest.push_back({f, FaceClass::outer, 0, 0, "outer" + std::to_string(++outer_n)});
        out.subdivision.set_face_class(f, FaceClass::outer);
    }
    std::sort(out.manifest.begin(), out.manifest.end(),
              [](const ManifestEntry& a, const ManifestEntry& c) { return a.face < c.face; });
}

int find_box(const std::vector<Box>& boxes, const std::string& name, int gadget, int clause = 0) {
    for (const Box& b : boxes)
        if (b.gadget == gadget && b.clause == clause && b.name == name) return b.face;
    throw std::logic_error("missing box " + name);
}

// ---------------------------------------------------------------------------
// Stabbing reduction
// ---------------------------------------------------------------------------

struct StabTriple {
    int clause = 0;      // 1-based
    int first = 0;       // first extended divider index (1-based within the row)
    coord_t yb = 0;      // clause rectangle edge the legs reach
};

// Layout constants for one stabbing variable gadget: row dividers sit at unit
// pitch, R1/R3 are unit-wide columns, the middle band R5 spans two units.
struct StabGadget {
    coord_t ox;  // v1 x
    int m;
    coord_t v1() const { return ox; }
    coord_t v2() const { return ox + 1; }
    coord_t v3() const { return ox + 4 * m + 2; }
    coord_t v4() const { return ox + 4 * m + 3; }
    coord_t lx(int t) const { return ox + 1 + t; }  // divider t in 1..4m
    static coord_t width(int m) { return 4 * m + 3; }
};

// The extended triple for the k-th clause on a side. Positive literals use
// dividers {4k-3, 4k-2, 4k-1} above the line; below the line the roles swap
// so that the middle divider lands on the parity the truth value selects.
int stab_triple_first(Side side, int k, bool positive) {
    if (side == Side::top) return positive ? 4 * k - 3 : 4 * k - 2;
    return positive ? 4 * k - 2 : 4 * k - 3;
}

void emit_stab_gadget(Builder& b, const StabGadget& g, int var,
                      const std::vector<StabTriple>& top, const std::vector<StabTriple>& bottom) {
    const int m = g.m;
    // Verticals of the frame and the two column dividers.
    b.seg(g.v1(), -2, g.v1(), 2);
    b.seg(g.v2(), -2, g.v2(), 2);
    b.seg(g.v3(), -2, g.v3(), 2);
    b.seg(g.v4(), -2, g.v4(), 2);
    b.seg(g.v2(), 1, g.v3(), 1);    // h2
    b.seg(g.v2(), -1, g.v3(), -1);  // h3

    auto extended = [](const std::vector<StabTriple>& ts, int t) -> const StabTriple* {
        for (const auto& tr : ts)
            if (t >= tr.first && t <= tr.first + 2) return &tr;
        return nullptr;
    };

    std::vector<std::pair<coord_t, coord_t>> gaps_top, gaps_bottom;
    for (const auto& tr : top) gaps_top.emplace_back(g.lx(tr.first), g.lx(tr.first + 2));
    for (const auto& tr : bottom) gaps_bottom.emplace_back(g.lx(tr.first), g.lx(tr.first + 2));
    b.broken_h(2, g.v1(), g.v4(), gaps_top);    // h1
    b.broken_h(-2, g.v1(), g.v4(), gaps_bottom);  // h4

    for (int t = 1; t <= 4 * m; ++t) {
        const StabTriple* up = extended(top, t);
        b.seg(g.lx(t), 1, g.lx(t), up ? up->yb : 2);
        const StabTriple* dn = extended(bottom, t);
        b.seg(g.lx(t), dn ? -dn->yb : -2, g.lx(t), -1);
    }

    b.add_box("R1", FaceClass::variable, var, 0, g.v1(), -2, g.v2(), 2);
    b.add_box("R3", FaceClass::variable, var, 0, g.v3(), -2, g.v4(), 2);
    b.add_box("R5", FaceClass::variable, var, 0, g.v2(), -1, g.v3(), 1);
    for (int t = 1; t <= 4 * m + 1; ++t)
        b.add_box("r" + std::to_string(t), FaceClass::variable, var, 0, g.ox + t, 1, g.ox + t + 1, 2);
    for (int t = 1; t <= 4 * m + 1; ++t)
        b.add_box("r" + std::to_string(4 * m + 1 + t), FaceClass::variable, var, 0, g.ox + t, -2,
                  g.ox + t + 1, -1);
}

}  // namespace

ReductionOutput build_stab_reduction(const Rp3SatInstance& inst, Variant variant) {
    LayoutPlan plan = plan_layout(inst);
    const int n = inst.variables;
    const int m = inst.clause_count();

    ReductionOutput out;
    out.problem = Problem::stab;
    out.variant = variant;
    out.target = static_cast<long long>(n) * (4 * m + 2);

    Builder b;
    const coord_t stride = StabGadget::width(m) + 4;
    std::vector<StabGadget> gadgets;
    for (int i = 0; i < n; ++i) gadgets.push_back({i * stride, m});

    // Per-variable extended triples, then clause rectangles spanning from the
    // leftmost to the rightmost extended divider.
    std::vector<std::vector<StabTriple>> top(n), bottom(n);
    struct Rect { coord_t xl, xr, yb; Side side; int level; };
    std::vector<Rect> rects(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        coord_t yb = 3 + 2 * pc.level;
        coord_t xl = INT64_MAX, xr = INT64_MIN;
        for (int t = 0; t < 3; ++t) {
            const auto& lit = pc.lits[t];
            const StabGadget& g = gadgets[lit.var - 1];
            int first = stab_triple_first(pc.side, pc.slot[t], lit.positive);
            (pc.side == Side::top ? top : bottom)[lit.var - 1].push_back(
                {pc.index + 1, first, yb});
            xl = std::min(xl, g.lx(first));
            xr = std::max(xr, g.lx(first + 2));
        }
        rects[pc.index] = {xl, xr, yb, pc.side, pc.level};
        coord_t sign = pc.side == Side::top ? 1 : -1;
        coord_t y0 = sign * yb, y1 = sign * (yb + 1);
        b.box_segs(xl, std::min(y0, y1), xr, std::max(y0, y1));
        b.add_box("r_c" + std::to_string(pc.index + 1), FaceClass::clause, 0, pc.index + 1, xl,
                  std::min(y0, y1), xr, std::max(y0, y1));
    }
    for (int i = 0; i < n; ++i) emit_stab_gadget(b, gadgets[i], i + 1, top[i], bottom[i]);

    // A pair of clauses interlocks when the higher one needs a leg strictly
    // inside the lower one's rectangle; that only happens when the incidence
    // structure is not planar (stacked clauses sharing a middle variable).
    // Both ends are flagged: the lower rectangle is cut apart, the higher
    // clause's connection is interrupted on the way up.
    std::vector<char> pierced(plan.clauses.size(), 0);
    for (const PlannedClause& hi : plan.clauses)
        for (int t = 0; t < 3; ++t) {
            const StabGadget& g = gadgets[hi.lits[t].var - 1];
            int first = stab_triple_first(hi.side, hi.slot[t], hi.lits[t].positive);
            for (coord_t leg = g.lx(first); leg <= g.lx(first + 2); ++leg)
                for (const PlannedClause& lo : plan.clauses)
                    if (lo.side == hi.side && lo.level < hi.level &&
                        rects[lo.index].xl < leg && leg < rects[lo.index].xr) {
                        pierced[lo.index] = 1;
                        pierced[hi.index] = 1;
                    }
        }
    bool any_pierced = std::any_of(pierced.begin(), pierced.end(), [](char c) { return c != 0; });

    finish(out, b, any_pierced);

    // Canonical point sets: walk the cycle of junctions; odd junctions make
    // the "true" set, even ones the "false" set. Every junction point sits on
    // the outer lines h1/h4 except one per set kept on h2 for R5, and the
    // middles of extended triples, which ride up to the clause rectangle (or
    // to the first rectangle in the way, which is also the top of the face
    // they must stab).
    auto adapted_y = [&](coord_t x, coord_t yb, Side side) {
        coord_t best = yb;
        for (const Rect& r : rects)
            if (r.side == side && r.yb < best && r.xl < x && x < r.xr) best = r.yb;
        return best;
    };
    out.points_true.resize(n);
    out.points_false.resize(n);
    out.gadget_faces.resize(n);
    out.gadget_cycle.resize(n);
    for (int i = 0; i < n; ++i) {
        const StabGadget& g = gadgets[i];
        auto middle_of = [&](const std::vector<StabTriple>& ts, int t) -> const StabTriple* {
            for (const auto& tr : ts)
                if (tr.first + 1 == t) return &tr;
            return nullptr;
        };
        std::vector<Point> cycle_pts;
        cycle_pts.push_back({g.v2(), 1});  // kept on h2: stabs R1, r1, R5
        for (int t = 1; t <= 4 * m; ++t) {
            if (const StabTriple* tr = middle_of(top[i], t))
                cycle_pts.push_back({g.lx(t), adapted_y(g.lx(t), tr->yb, Side::top)});
            else
                cycle_pts.push_back({g.lx(t), 2});
        }
        cycle_pts.push_back({g.v3(), 1});   // kept on h2 for the even set
        cycle_pts.push_back({g.v3(), -2});
        for (int t = 4 * m; t >= 1; --t) {
            if (const StabTriple* tr = middle_of(bottom[i], t))
                cycle_pts.push_back({g.lx(t), -adapted_y(g.lx(t), tr->yb, Side::bottom)});
            else
                cycle_pts.push_back({g.lx(t), -2});
        }
        cycle_pts.push_back({g.v2(), -2});
        assert(static_cast<int>(cycle_pts.size()) == 8 * m + 4);
        for (std::size_t q = 0; q < cycle_pts.size(); ++q)
            ((q % 2 == 0) ? out.points_true : out.points_false)[i].push_back(cycle_pts[q]);
    }

    // Gadget face lists and the stabbing cycle (everything except R5).
    for (const Box& box : b.boxes) {
        if (box.cls != FaceClass::variable) continue;
        out.gadget_faces[box.gadget - 1].push_back(box.face);
        if (box.name != "R5") out.gadget_cycle[box.gadget - 1].push_back(box.face);
    }

    out.clause_info.resize(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        ClauseGeometry& cg = out.clause_info[pc.index];
        cg.side = pc.side;
        cg.level = pc.level;
        cg.pierced = pierced[pc.index] != 0;
        cg.faces = {find_box(b.boxes, "r_c" + std::to_string(pc.index + 1), 0, pc.index + 1)};
        for (int t = 0; t < 3; ++t) {
            int first = stab_triple_first(pc.side, pc.slot[t], pc.lits[t].positive);
            int row_base = pc.side == Side::top ? 0 : 4 * m + 1;
            cg.literal_faces.push_back(find_box(
                b.boxes, "r" + std::to_string(row_base + first + 1), pc.lits[t].var));
            cg.literal_faces.push_back(find_box(
                b.boxes, "r" + std::to_string(row_base + first + 2), pc.lits[t].var));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Independent-set reduction
// ---------------------------------------------------------------------------

namespace {

// Cells are three units wide so a unit-wide leg can land strictly inside its
// attachment cell without touching the neighbors' closures.
struct MisGadget {
    coord_t ox;
    int m;
    coord_t v1() const { return ox; }
    coord_t v2() const { return ox + 1; }
    coord_t v3() const { return ox + 1 + 3 * (4 * m - 2); }
    coord_t v4() const { return v3() + 1; }
    coord_t cell_x0(int c) const { return ox + 1 + 3 * (c - 1); }  // c in 1..4m-2
    static coord_t width(int m) { return 2 + 3 * (4 * m - 2); }
};

}  // namespace

ReductionOutput build_mis_reduction(const Rp3SatInstance& inst) {
    LayoutPlan plan = plan_layout(inst);
    const int n = inst.variables;
    const int m = inst.clause_count();
    if (m < 1)
        throw ReductionError(ReductionError::Kind::layout_invalid,
                             "independent-set reduction needs at least one clause");

    ReductionOutput out;
    out.problem = Problem::mis;
    out.variant = Variant::rect;  // the geometry is shared by both variants
    out.target = static_cast<long long>(n) * (4 * m - 1) + 4 * m;

    Builder b;
    const coord_t stride = MisGadget::width(m) + 4;
    std::vector<MisGadget> gadgets;
    for (int i = 0; i < n; ++i) gadgets.push_back({i * stride, m});

    for (int i = 0; i < n; ++i) {
        const MisGadget& g = gadgets[i];
        b.seg(g.v1(), -2, g.v1(), 2);
        b.seg(g.v2(), -2, g.v2(), 2);
        b.seg(g.v3(), -2, g.v3(), 2);
        b.seg(g.v4(), -2, g.v4(), 2);
        b.seg(g.v1(), 2, g.v4(), 2);
        b.seg(g.v1(), -2, g.v4(), -2);
        b.seg(g.v2(), 1, g.v3(), 1);
        b.seg(g.v2(), -1, g.v3(), -1);
        for (int c = 1; c <= 4 * m - 3; ++c) {
            b.seg(g.cell_x0(c + 1), 1, g.cell_x0(c + 1), 2);
            b.seg(g.cell_x0(c + 1), -2, g.cell_x0(c + 1), -1);
        }
        int var = i + 1;
        b.add_box("R1", FaceClass::variable, var, 0, g.v1(), -2, g.v2(), 2);
        b.add_box("R3", FaceClass::variable, var, 0, g.v3(), -2, g.v4(), 2);
        b.add_box("R5", FaceClass::variable, var, 0, g.v2(), -1, g.v3(), 1);
        for (int c = 1; c <= 4 * m - 2; ++c) {
            b.add_box("r" + std::to_string(c), FaceClass::variable, var, 0, g.cell_x0(c), 1,
                      g.cell_x0(c) + 3, 2);
            b.add_box("r" + std::to_string(4 * m - 2 + c), FaceClass::variable, var, 0,
                      g.cell_x0(c), -2, g.cell_x0(c) + 3, -1);
        }
    }

    // Clause gadgets: a ring of nine rectangles around an L-shaped hole. Ring
    // positions 0/3/6 are the legs; every maximum (4-element) independent set
    // of the ring uses a leg, and with all legs excluded the optimum drops
    // to 3.
    struct RingGeom {
        std::array<coord_t, 3> leg_x{};  // left edge of each leg
        coord_t band = 0;                // bottom band lower edge (absolute, top side)
        std::array<int, 3> attach_cell{};
    };
    std::vector<RingGeom> rings(plan.clauses.size());
    std::vector<std::array<coord_t, 2>> extents(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        RingGeom& rg = rings[pc.index];
        rg.band = 3 + 6 * pc.level;
        for (int t = 0; t < 3; ++t) {
            const auto& lit = pc.lits[t];
            int cell = lit.positive ? 4 * pc.slot[t] - 3 : 4 * pc.slot[t] - 2;
            rg.attach_cell[t] = cell;
            rg.leg_x[t] = gadgets[lit.var - 1].cell_x0(cell) + 1;
        }
        const coord_t p1 = rg.leg_x[0], p2 = rg.leg_x[1], p3 = rg.leg_x[2];
        const coord_t B = rg.band;
        const coord_t q1 = p1 + 2, q2 = p2 + 2, q3 = p2;
        const coord_t s = pc.side == Side::top ? 1 : -1;
        auto box = [&](const char* name, coord_t x0, coord_t y0, coord_t x1, coord_t y1,
                       FaceClass cls = FaceClass::clause, bool rect = true) {
            coord_t ya = std::min(s * y0, s * y1), yb2 = std::max(s * y0, s * y1);
            b.box_segs(x0, ya, x1, yb2);
            Box& bx = b.add_box(std::string("r_c") + std::to_string(pc.index + 1) + "_" + name, cls,
                                0, pc.index + 1, x0, ya, x1, yb2, rect);
            // sample the lowest cell of the box on its left edge
            bx.sample = {x0, ya};
        };
        box("1", p1, 2, p1 + 1, B + 4);          // leg, ring position 0
        box("2", p2, 2, p2 + 1, B + 1);          // leg, ring position 3
        box("3", p3, 2, p3 + 1, B + 4);          // leg, ring position 6
        box("4", p1 + 1, B, q1, B + 1);          // position 1
        box("5", q1, B, p2, B + 1);              // position 2
        box("6", p2 + 1, B, q2, B + 1);          // position 4
        box("7", q2, B, p3, B + 1);              // position 5
        box("8", q3, B + 2, p3, B + 4);          // position 7
        box("9", p1 + 1, B + 3, q3, B + 4);      // position 8
        // the enclosed hole: off the ring, never rectangular
        {
            coord_t ya = std::min(s * (B + 1), s * (B + 2)), yb2 = std::max(s * (B + 1), s * (B + 2));
            Box& hole = b.add_box("hole" + std::to_string(pc.index + 1), FaceClass::outer, 0,
                                  pc.index + 1, p1 + 1, ya, p3, yb2, false);
            hole.sample = {p1 + 1, std::min(s * (B + 1), s * (B + 2))};
        }
        extents[pc.index] = {p1, p3 + 1};
    }

    std::vector<char> pierced(plan.clauses.size(), 0);
    for (const PlannedClause& hi : plan.clauses)
        for (int t = 0; t < 3; ++t) {
            coord_t lx = rings[hi.index].leg_x[t];
            for (const PlannedClause& lo : plan.clauses)
                if (lo.side == hi.side && lo.level < hi.level &&
                    lx + 1 > extents[lo.index][0] && lx < extents[lo.index][1]) {
                    pierced[lo.index] = 1;
                    pierced[hi.index] = 1;
                }
        }
    bool any_pierced = std::any_of(pierced.begin(), pierced.end(), [](char c) { return c != 0; });

    finish(out, b, any_pierced);

    // Canonical independent sets: alternation around the cycle
    // R1, r1..r_{4m-2}, R3, bottom row right-to-left. Even cycle positions
    // (R1 and even cells) form the "true" set.
    out.faces_true.resize(n);
    out.faces_false.resize(n);
    out.gadget_faces.resize(n);
    out.gadget_cycle.resize(n);
    for (int i = 0; i < n; ++i) {
        int var = i + 1;
        int r1f = find_box(b.boxes, "R1", var);
        int r3f = find_box(b.boxes, "R3", var);
        out.faces_true[i].push_back(r1f);
        out.faces_false[i].push_back(r3f);
        out.gadget_cycle[i].push_back(r1f);
        for (int c = 1; c <= 4 * m - 2; ++c)
            out.gadget_cycle[i].push_back(find_box(b.boxes, "r" + std::to_string(c), var));
        out.gadget_cycle[i].push_back(r3f);
        for (int c = 4 * m - 2; c >= 1; --c)
            out.gadget_cycle[i].push_back(
                find_box(b.boxes, "r" + std::to_string(4 * m - 2 + c), var));
        for (int c = 1; c <= 8 * m - 4; ++c) {
            int f = find_box(b.boxes, "r" + std::to_string(c), var);
            int cell = (c - 1) % (4 * m - 2) + 1;
            ((cell % 2 == 0) ? out.faces_true : out.faces_false)[i].push_back(f);
        }
        std::sort(out.faces_true[i].begin(), out.faces_true[i].end());
        std::sort(out.faces_false[i].begin(), out.faces_false[i].end());
    }
    for (const Box& box : b.boxes)
        if (box.cls == FaceClass::variable) out.gadget_faces[box.gadget - 1].push_back(box.face);

    out.clause_info.resize(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        ClauseGeometry& cg = out.clause_info[pc.index];
        cg.side = pc.side;
        cg.level = pc.level;
        cg.pierced = pierced[pc.index] != 0;
        std::string base = "r_c" + std::to_string(pc.index + 1) + "_";
        // ring order: leg1, 4, 5, leg2, 6, 7, leg3, 8, 9
        for (const char* nm : {"1", "4", "5", "2", "6", "7", "3", "8", "9"})
            cg.faces.push_back(find_box(b.boxes, base + nm, 0, pc.index + 1));
        for (int t = 0; t < 3; ++t) {
            int cell = rings[pc.index].attach_cell[t];
            if (pc.side == Side::bottom) cell += 4 * m - 2;  // bottom-row face names
            cg.literal_faces.push_back(
                find_box(b.boxes, "r" + std::to_string(cell), pc.lits[t].var));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dominating-set reduction
// ---------------------------------------------------------------------------

namespace {

struct MdsGadget {
    coord_t ox;
    int m;
    coord_t v1() const { return ox; }
    coord_t v2() const { return ox + 1; }
    coord_t v3() const { return ox + 1 + 3 * (3 * m + 1); }
    coord_t v4() const { return v3() + 1; }
    coord_t cell_x0(int c) const { return ox + 1 + 3 * (c - 1); }  // c in 1..3m+1
    static coord_t width(int m) { return 2 + 3 * (3 * m + 1); }
};

}  // namespace

ReductionOutput build_mds_reduction(const Rp3SatInstance& inst, Variant variant) {
    LayoutPlan plan = plan_layout(inst);
    const int n = inst.variables;
    const int m = inst.clause_count();
    if (m < 1)
        throw ReductionError(ReductionError::Kind::layout_invalid,
                             "dominating-set reduction needs at least one clause");

    ReductionOutput out;
    out.problem = Problem::mds;
    out.variant = variant;
    out.target = static_cast<long long>(n) * (2 * m + 2);

    Builder b;
    const coord_t stride = MdsGadget::width(m) + 4;
    std::vector<MdsGadget> gadgets;
    for (int i = 0; i < n; ++i) gadgets.push_back({i * stride, m});

    // Which top/bottom cell each clause extends, per gadget. Top clause k
    // uses group k (cells 3k-2, 3k-1); bottom clause k uses group 2m+2-k so
    // the slots still read left to right.
    struct Ext { int cell; coord_t yb; int clause; };
    std::vector<std::vector<Ext>> ext_top(n), ext_bottom(n);
    struct Rect { coord_t xl, xr, yb; Side side; int level; };
    std::vector<Rect> rects(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        coord_t yb = 6 + 3 * pc.level;
        coord_t xl = INT64_MAX, xr = INT64_MIN;
        for (int t = 0; t < 3; ++t) {
            const auto& lit = pc.lits[t];
            int k = pc.slot[t];
            int cell;
            if (pc.side == Side::top)
                cell = lit.positive ? 3 * k - 1 : 3 * k - 2;
            else
                cell = lit.positive ? 3 * k : 3 * k + 1;
            (pc.side == Side::top ? ext_top : ext_bottom)[lit.var - 1].push_back(
                {cell, yb, pc.index + 1});
            const MdsGadget& g = gadgets[lit.var - 1];
            xl = std::min(xl, g.cell_x0(cell));
            xr = std::max(xr, g.cell_x0(cell) + 3);
        }
        rects[pc.index] = {xl, xr, yb, pc.side, pc.level};
        coord_t sign = pc.side == Side::top ? 1 : -1;
        b.box_segs(xl, std::min(sign * yb, sign * (yb + 1)), xr,
                   std::max(sign * yb, sign * (yb + 1)));
        b.add_box("r_c" + std::to_string(pc.index + 1), FaceClass::clause, 0, pc.index + 1, xl,
                  std::min(sign * yb, sign * (yb + 1)), xr, std::max(sign * yb, sign * (yb + 1)));
    }

    for (int i = 0; i < n; ++i) {
        const MdsGadget& g = gadgets[i];
        const int var = i + 1;
        auto ext_of = [](const std::vector<Ext>& es, int cell) -> const Ext* {
            for (const auto& e : es)
                if (e.cell == cell) return &e;
            return nullptr;
        };

        b.seg(g.v1(), -4, g.v1(), 4);
        b.seg(g.v4(), -4, g.v4(), 4);
        b.seg(g.v3(), -4, g.v3(), 4);
        b.seg(g.v2(), -4, g.v2(), 4);
        // frame pieces when an edge cell is extended toward a clause
        if (const Ext* e = ext_of(ext_top[i], 1)) b.seg(g.v2(), 4, g.v2(), e->yb);
        if (const Ext* e = ext_of(ext_bottom[i], 3 * m + 1)) b.seg(g.v3(), -e->yb, g.v3(), -4);
        b.seg(g.v2(), 2, g.v3(), 2);    // h2
        b.seg(g.v2(), -2, g.v3(), -2);  // h3
        b.seg(g.v1(), 0, g.v2(), 0);    // R1 split
        b.seg(g.v3(), 0, g.v4(), 0);    // R3 split

        std::vector<std::pair<coord_t, coord_t>> gaps_top, gaps_bottom;
        for (const auto& e : ext_top[i]) gaps_top.emplace_back(g.cell_x0(e.cell), g.cell_x0(e.cell) + 3);
        for (const auto& e : ext_bottom[i])
            gaps_bottom.emplace_back(g.cell_x0(e.cell), g.cell_x0(e.cell) + 3);
        b.broken_h(4, g.v1(), g.v4(), gaps_top);     // h1
        b.broken_h(-4, g.v1(), g.v4(), gaps_bottom);  // h4

        for (int c = 1; c <= 3 * m; ++c) {
            coord_t x = g.cell_x0(c + 1);
            coord_t top_y = 4, bot_y = -4;
            if (const Ext* e = ext_of(ext_top[i], c)) top_y = std::max(top_y, e->yb);
            if (const Ext* e = ext_of(ext_top[i], c + 1)) top_y = std::max(top_y, e->yb);
            if (const Ext* e = ext_of(ext_bottom[i], c)) bot_y = std::min(bot_y, -e->yb);
            if (const Ext* e = ext_of(ext_bottom[i], c + 1)) bot_y = std::min(bot_y, -e->yb);
            b.seg(x, 2, x, top_y);
            b.seg(x, bot_y, x, -2);
        }

        // Ring faces, named by ring position.
        for (int c = 1; c <= 3 * m + 1; ++c) {
            b.add_box("r" + std::to_string(c), FaceClass::variable, var, 0, g.cell_x0(c), 2,
                      g.cell_x0(c) + 3, 4);
            int pos = 6 * m + 5 - c;
            b.add_box("r" + std::to_string(pos), FaceClass::variable, var, 0, g.cell_x0(c), -4,
                      g.cell_x0(c) + 3, -2);
        }
        b.add_box("r" + std::to_string(3 * m + 2), FaceClass::variable, var, 0, g.v3(), 0, g.v4(), 4);
        b.add_box("r" + std::to_string(3 * m + 3), FaceClass::variable, var, 0, g.v3(), -4, g.v4(), 0);
        b.add_box("r" + std::to_string(6 * m + 5), FaceClass::variable, var, 0, g.v1(), -4, g.v2(), 0);
        b.add_box("r" + std::to_string(6 * m + 6), FaceClass::variable, var, 0, g.v1(), 0, g.v2(), 4);

        // Independent rectangles s_j inside the middle band, one per group of
        // three ring positions, touching the first two.
        for (int j = 1; j <= 2 * m + 2; ++j) {
            coord_t x0, x1, y0, y1;
            if (j <= m) {  // top interior: pair (3j-2, 3j-1)
                coord_t X = g.cell_x0(3 * j - 1);
                x0 = X - 1; x1 = X + 1; y0 = 1; y1 = 2;
            } else if (j == m + 1) {  // top corner: pair (3m+1, R3 upper)
                x0 = g.v3() - 2; x1 = g.v3(); y0 = 1; y1 = 2;
            } else if (j <= 2 * m + 1) {  // bottom interior: cells (c1-1, c1)
                int c1 = 6 * m + 7 - 3 * j;
                coord_t X = g.cell_x0(c1);
                x0 = X - 1; x1 = X + 1; y0 = -2; y1 = -1;
            } else {  // bottom corner: pair (bottom-left cell, R1 lower)
                x0 = g.v2(); x1 = g.v2() + 2; y0 = -2; y1 = -1;
            }
            b.box_segs(x0, y0, x1, y1);
            b.add_box("s" + std::to_string(j), FaceClass::variable, var, 0, x0, y0, x1, y1);
        }

        // Remainder of the middle band; never rectangular thanks to the
        // s-notches.
        Box& rest = b.add_box("R5", FaceClass::variable, var, 0, g.v2(), -2, g.v3(), 2, false);
        rest.sample = {g.v2(), 0};

        if (variant == Variant::all) {
            // Blocker rectangles outside the frame, one per group, touching
            // exactly the group's two ring faces. They sit on the first
            // cell's outer edge unless that cell was extended toward a
            // clause, in which case they flip to the second cell.
            for (int j = 1; j <= 2 * m + 2; ++j) {
                coord_t x0, x1, y0, y1;
                if (j <= m + 1) {
                    coord_t X = j <= m ? g.cell_x0(3 * j - 1) : g.v3();
                    bool first_ext = j <= m && ext_of(ext_top[i], 3 * j - 2) != nullptr;
                    x0 = first_ext ? X : X - 1;
                    x1 = x0 + 1;
                    y0 = 4; y1 = 5;
                } else {
                    int c1 = j <= 2 * m + 1 ? 6 * m + 7 - 3 * j : 1;
                    coord_t X = g.cell_x0(c1);
                    bool first_ext = j <= 2 * m + 1 && ext_of(ext_bottom[i], c1) != nullptr;
                    x0 = first_ext ? X - 1 : X;
                    x1 = x0 + 1;
                    y0 = -5; y1 = -4;
                }
                b.box_segs(x0, y0, x1, y1);
                b.add_box("b" + std::to_string(j), FaceClass::variable, var, 0, x0, y0, x1, y1);
            }
        }
    }

    std::vector<char> pierced(plan.clauses.size(), 0);
    for (const PlannedClause& hi : plan.clauses)
        for (int t = 0; t < 3; ++t) {
            const MdsGadget& g = gadgets[hi.lits[t].var - 1];
            int k = hi.slot[t];
            int cell = hi.side == Side::top ? (hi.lits[t].positive ? 3 * k - 1 : 3 * k - 2)
                                            : (hi.lits[t].positive ? 3 * k : 3 * k + 1);
            coord_t x0 = g.cell_x0(cell), x1 = x0 + 3;
            for (const PlannedClause& lo : plan.clauses)
                if (lo.side == hi.side && lo.level < hi.level && x1 > rects[lo.index].xl &&
                    x0 < rects[lo.index].xr) {
                    pierced[lo.index] = 1;
                    pierced[hi.index] = 1;
                }
        }
    bool any_pierced = std::any_of(pierced.begin(), pierced.end(), [](char c) { return c != 0; });

    finish(out, b, any_pierced);

    // Canonical dominating sets: ring positions 1 mod 3 ("false") and
    // 2 mod 3 ("true").
    out.faces_true.resize(n);
    out.faces_false.resize(n);
    out.gadget_faces.resize(n);
    out.gadget_cycle.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int pos = 1; pos <= 6 * m + 6; ++pos) {
            int f = find_box(b.boxes, "r" + std::to_string(pos), i + 1);
            out.gadget_cycle[i].push_back(f);
            if (pos % 3 == 1) out.faces_false[i].push_back(f);
            if (pos % 3 == 2) out.faces_true[i].push_back(f);
        }
        std::sort(out.faces_true[i].begin(), out.faces_true[i].end());
        std::sort(out.faces_false[i].begin(), out.faces_false[i].end());
    }
    for (const Box& box : b.boxes)
        if (box.cls == FaceClass::variable) out.gadget_faces[box.gadget - 1].push_back(box.face);

    out.clause_info.resize(plan.clauses.size());
    for (const PlannedClause& pc : plan.clauses) {
        ClauseGeometry& cg = out.clause_info[pc.index];
        cg.side = pc.side;
        cg.level = pc.level;
        cg.pierced = pierced[pc.index] != 0;
        cg.faces = {find_box(b.boxes, "r_c" + std::to_string(pc.index + 1), 0, pc.index + 1)};
        for (int t = 0; t < 3; ++t) {
            int k = pc.slot[t];
            int cell;
            if (pc.side == Side::top)
                cell = pc.lits[t].positive ? 3 * k - 1 : 3 * k - 2;
            else
                cell = pc.lits[t].positive ? 3 * k : 3 * k + 1;
            int pos = pc.side == Side::top ? cell : 6 * m + 5 - cell;
            cg.literal_faces.push_back(
                find_box(b.boxes, "r" + std::to_string(pos), pc.lits[t].var));
        }
    }
    return out;
}

ReductionOutput build_reduction(const Rp3SatInstance& inst, Problem problem, Variant variant) {
    switch (problem) {
        case Problem::stab: return build_stab_reduction(inst, variant);
        case Problem::mis: {
            // identical geometry for both variants, only the face filter
            // changes downstream; keep the requested tag on the output
            ReductionOutput out = build_mis_reduction(inst);
            out.variant = variant;
            return out;
        }
        case Problem::mds: return build_mds_reduction(inst, variant);
    }
    throw std::logic_error("unknown problem");
}

SegmentSet variable_gadget_segments(Problem problem, int m, Variant variant) {
    assert(m >= 1);
    Builder b;
    switch (problem) {
        case Problem::stab:
            emit_stab_gadget(b, StabGadget{0, m}, 1, {}, {});
            break;
        case Problem::mis: {
            MisGadget g{0, m};
            b.seg(g.v1(), -2, g.v1(), 2);
            b.seg(g.v2(), -2, g.v2(), 2);
            b.seg(g.v3(), -2, g.v3(), 2);
            b.seg(g.v4(), -2, g.v4(), 2);
            b.seg(g.v1(), 2, g.v4(), 2);
            b.seg(g.v1(), -2, g.v4(), -2);
            b.seg(g.v2(), 1, g.v3(), 1);
            b.seg(g.v2(), -1, g.v3(), -1);
            for (int c = 1; c <= 4 * m - 3; ++c) {
                b.seg(g.cell_x0(c + 1), 1, g.cell_x0(c + 1), 2);
                b.seg(g.cell_x0(c + 1), -2, g.cell_x0(c + 1), -1);
            }
            break;
        }
        case Problem::mds: {
            MdsGadget g{0, m};
            b.seg(g.v1(), -4, g.v1(), 4);
            b.seg(g.v4(), -4, g.v4(), 4);
            b.seg(g.v3(), -4, g.v3(), 4);
            b.seg(g.v2(), -4, g.v2(), 4);
            b.seg(g.v2(), 2, g.v3(), 2);
            b.seg(g.v2(), -2, g.v3(), -2);
            b.seg(g.v1(), 0, g.v2(), 0);
            b.seg(g.v3(), 0, g.v4(), 0);
            b.seg(g.v1(), 4, g.v4(), 4);
            b.seg(g.v1(), -4, g.v4(), -4);
            for (int c = 1; c <= 3 * m; ++c) {
                b.seg(g.cell_x0(c + 1), 2, g.cell_x0(c + 1), 4);
                b.seg(g.cell_x0(c + 1), -4, g.cell_x0(c + 1), -2);
            }
            for (int j = 1; j <= 2 * m + 2; ++j) {
                coord_t x0, x1, y0, y1;
                if (j <= m) {
                    coord_t X = g.cell_x0(3 * j - 1);
                    x0 = X - 1; x1 = X + 1; y0 = 1; y1 = 2;
                } else if (j == m + 1) {
                    x0 = g.v3() - 2; x1 = g.v3(); y0 = 1; y1 = 2;
                } else if (j <= 2 * m + 1) {
                    int c1 = 6 * m + 7 - 3 * j;
                    coord_t X = g.cell_x0(c1);
                    x0 = X - 1; x1 = X + 1; y0 = -2; y1 = -1;
                } else {
                    x0 = g.v2(); x1 = g.v2() + 2; y0 = -2; y1 = -1;
                }
                b.box_segs(x0, y0, x1, y1);
            }
            if (variant == Variant::all) {
                for (int j = 1; j <= 2 * m + 2; ++j) {
                    coord_t x0;
                    coord_t y0, y1;
                    if (j <= m + 1) {
                        coord_t X = j <= m ? g.cell_x0(3 * j - 1) : g.v3();
                        x0 = X - 1; y0 = 4; y1 = 5;
                    } else {
                        int c1 = j <= 2 * m + 1 ? 6 * m + 7 - 3 * j : 1;
                        x0 = g.cell_x0(c1); y0 = -5; y1 = -4;
                    }
                    b.box_segs(x0, y0, x0 + 1, y1);
                }
            }
            break;
        }
    }
    return SegmentSet(std::move(b.segs));
}

const ManifestEntry* ReductionOutput::find_face(const std::string& name, int gadget) const {
    for (const auto& e : manifest)
        if (e.gadget == gadget && e.name == name) return &e;
    return nullptr;
}

}  // namespace subcover
