#include <algorithm>
#include <cstdlib>

#include "reduction_internal.hpp"

namespace subcover {

const char* side_name(Side s) { return s == Side::top ? "top" : "bottom"; }
const char* variant_name(Variant v) { return v == Variant::rect ? "rect" : "all"; }

bool satisfies(const Rp3SatInstance& inst, std::uint32_t assignment) {
    for (const Clause& c : inst.clauses) {
        bool sat = false;
        for (int lit : c.literals) {
            int var = std::abs(lit) - 1;
            bool val = (assignment >> var) & 1u;
            if ((lit > 0) == val) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

SatResult sat_brute_force(const Rp3SatInstance& inst) {
    if (inst.variables < 0 || inst.variables > 24)
        throw ReductionError(ReductionError::Kind::too_large,
                             "brute force limited to 24 variables");
    SatResult res;
    const std::uint32_t total = 1u << inst.variables;
    for (std::uint32_t a = 0; a < total; ++a) {
        if (!satisfies(inst, a)) continue;
        res.satisfiable = true;
        res.witness_count++;
        if (res.witnesses.size() < kMaxWitnessList) res.witnesses.push_back(a);
    }
    return res;
}

namespace {

std::pair<int, int> span_of(const Clause& c) {
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int lit : c.literals) {
        lo = std::min(lo, std::abs(lit));
        hi = std::max(hi, std::abs(lit));
    }
    return {lo, hi};
}

}  // namespace

std::vector<LayoutViolation> validate_layout(const Rp3SatInstance& inst) {
    std::vector<LayoutViolation> out;
    if (inst.variables < 0)
        out.push_back({"negative variable count", -1, -1});

    for (int i = 0; i < inst.clause_count(); ++i) {
        const Clause& c = inst.clauses[i];
        std::array<int, 3> vars{};
        bool bad = false;
        for (int t = 0; t < 3; ++t) {
            int v = std::abs(c.literals[t]);
            if (v < 1 || v > inst.variables) {
                out.push_back({"variable index out of range in clause " + std::to_string(i + 1), i, -1});
                bad = true;
                break;
            }
            vars[t] = v;
        }
        if (bad) continue;
        std::sort(vars.begin(), vars.end());
        if (vars[0] == vars[1] || vars[1] == vars[2])
            out.push_back({"repeated variable in clause " + std::to_string(i + 1), i, -1});
    }
    if (!out.empty()) return out;

    // Same-side spans must be nested (or equal) or disjoint; a true partial
    // overlap cannot be drawn with non-crossing vertical legs.
    for (int i = 0; i < inst.clause_count(); ++i)
        for (int j = i + 1; j < inst.clause_count(); ++j) {
            if (inst.clauses[i].side != inst.clauses[j].side) continue;
            auto [a0, a1] = span_of(inst.clauses[i]);
            auto [b0, b1] = span_of(inst.clauses[j]);
            bool nested = (a0 <= b0 && b1 <= a1) || (b0 <= a0 && a1 <= b1);
            bool disjoint = a1 <= b0 || b1 <= a0;
            if (!nested && !disjoint)
                out.push_back({"clauses " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                   " overlap without nesting",
                               i, j});
        }
    return out;
}

namespace detail {

LayoutPlan plan_layout(const Rp3SatInstance& inst) {
    auto violations = validate_layout(inst);
    if (!violations.empty()) {
        std::string msg = "invalid layout:";
        for (const auto& v : violations) msg += " " + v.what + ";";
        throw ReductionError(ReductionError::Kind::layout_invalid, msg);
    }

    LayoutPlan plan;
    plan.clauses.resize(inst.clause_count());
    for (int i = 0; i < inst.clause_count(); ++i) {
        PlannedClause& pc = plan.clauses[i];
        pc.index = i;
        pc.side = inst.clauses[i].side;
        for (int t = 0; t < 3; ++t) {
            int lit = inst.clauses[i].literals[t];
            pc.lits[t] = {std::abs(lit), lit > 0};
        }
        std::sort(pc.lits.begin(), pc.lits.end(),
                  [](const LitRef& a, const LitRef& b) { return a.var < b.var; });
        pc.span_min = pc.lits[0].var;
        pc.span_max = pc.lits[2].var;
    }

    // Level: number of same-side clauses strictly contained in the span, plus
    // earlier clauses with the identical span. Containment implies a higher
    // level, so rectangles can be stacked by level without overlapping.
    for (auto& pc : plan.clauses) {
        int lvl = 0;
        for (const auto& other : plan.clauses) {
            if (other.index == pc.index || other.side != pc.side) continue;
            bool inside = pc.span_min <= other.span_min && other.span_max <= pc.span_max;
            bool same = other.span_min == pc.span_min && other.span_max == pc.span_max;
            if (inside && !same)
                lvl++;
            else if (same && other.index < pc.index)
                lvl++;
        }
        pc.level = lvl;
        if (pc.side == Side::top)
            plan.max_level_top = std::max(plan.max_level_top, lvl);
        else
            plan.max_level_bottom = std::max(plan.max_level_bottom, lvl);
    }

    // Slot order at each (variable, side): legs whose rectangle extends to
    // the left come first (inner levels leftmost), then legs of clauses whose
    // span strictly contains the variable, then rightward rectangles (inner
    // levels rightmost). This keeps every avoidable leg/rectangle crossing
    // out of the drawing.
    for (int var = 1; var <= inst.variables; ++var) {
        for (Side side : {Side::top, Side::bottom}) {
            struct Entry { int order_class; int key; PlannedClause* pc; int lit_pos; };
            std::vector<Entry> entries;
            for (auto& pc : plan.clauses) {
                if (pc.side != side) continue;
                for (int t = 0; t < 3; ++t) {
                    if (pc.lits[t].var != var) continue;
                    int cls;
                    int key;
                    if (var == pc.span_max) { cls = 0; key = pc.level; }        // closes: level ascending
                    else if (var == pc.span_min) { cls = 2; key = -pc.level; }  // opens: level descending
                    else { cls = 1; key = pc.level; }                           // middle
                    entries.push_back({cls, key, &pc, t});
                }
            }
            std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
                if (a.order_class != b.order_class) return a.order_class < b.order_class;
                if (a.key != b.key) return a.key < b.key;
                return a.pc->index < b.pc->index;
            });
            for (std::size_t k = 0; k < entries.size(); ++k)
                entries[k].pc->slot[entries[k].lit_pos] = static_cast<int>(k) + 1;
        }
    }
    return plan;
}

}  // namespace detail
}  // namespace subcover
