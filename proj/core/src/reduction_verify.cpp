#include <algorithm>
#include <set>

#include "reduction_internal.hpp"

namespace subcover {

namespace {

// Ring positions of the three legs in the clause-gadget face list, and a
// 4-element independent set of the ring using only that leg.
constexpr int kLegPos[3] = {0, 3, 6};
constexpr int kLegPick[3][4] = {{0, 2, 4, 7}, {3, 5, 7, 1}, {6, 8, 1, 4}};

}  // namespace

CanonicalSolution canonical_solution(const ReductionOutput& out, std::uint32_t assignment) {
    CanonicalSolution sol;
    const int n = static_cast<int>(out.points_true.empty() ? out.faces_true.size()
                                                           : out.points_true.size());
    std::set<int> chosen_faces;
    for (int i = 0; i < n; ++i) {
        bool val = (assignment >> i) & 1u;
        if (out.problem == Problem::stab) {
            const auto& pts = val ? out.points_true[i] : out.points_false[i];
            sol.points.insert(sol.points.end(), pts.begin(), pts.end());
        } else {
            const auto& fs = val ? out.faces_true[i] : out.faces_false[i];
            sol.faces.insert(sol.faces.end(), fs.begin(), fs.end());
            chosen_faces.insert(fs.begin(), fs.end());
        }
    }
    if (out.problem == Problem::mis) {
        // Four rectangles per clause gadget, anchored at the first leg whose
        // attachment rectangle stayed out of the variable selection.
        for (const ClauseGeometry& cg : out.clause_info) {
            int free_leg = -1;
            for (int t = 0; t < 3; ++t)
                if (!chosen_faces.count(cg.literal_faces[t])) { free_leg = t; break; }
            if (free_leg < 0)
                throw ReductionError(ReductionError::Kind::clause_unsatisfied,
                                     "no free attachment rectangle for a clause gadget");
            for (int pos : kLegPick[free_leg]) sol.faces.push_back(cg.faces[pos]);
        }
        std::sort(sol.faces.begin(), sol.faces.end());
    }
    return sol;
}

namespace {

struct ConverseState {
    bool failed = false;       // a structural claim was refuted
    bool exhausted = false;    // a search ran out of budget
    std::vector<std::string>* details;

    void fail(const std::string& msg) {
        failed = true;
        details->push_back(msg);
    }
    void out_of_budget(const std::string& msg) {
        exhausted = true;
        details->push_back(msg + " (budget exceeded)");
    }
};

std::vector<int> rect_subset(const Subdivision& sub, const std::vector<int>& faces) {
    std::vector<int> out;
    for (int f : faces)
        if (sub.faces()[f].is_rectangle) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

// Gadget face sets must be pairwise non-adjacent, otherwise one point or
// face could serve two gadgets and the per-gadget counting breaks.
void check_gadget_separation(const ReductionOutput& out, ConverseState& st) {
    const int n = static_cast<int>(out.gadget_faces.size());
    std::vector<int> owner(out.subdivision.face_count(), -1);
    for (int i = 0; i < n; ++i)
        for (int f : out.gadget_faces[i]) {
            if (owner[f] != -1) st.fail("face shared between gadgets");
            owner[f] = i;
        }
    for (int f = 0; f < out.subdivision.face_count(); ++f) {
        if (owner[f] < 0) continue;
        for (int g : out.subdivision.adjacency()[f])
            if (owner[g] >= 0 && owner[g] != owner[f]) {
                st.fail("variable gadgets touch");
                return;
            }
    }
}

void check_stab_gadgets(const ReductionOutput& out, const Rp3SatInstance& inst,
                        const SearchBudget& budget, ConverseState& st) {
    const int n = inst.variables;
    const int m = inst.clause_count();
    const long long per_gadget = 4LL * m + 2;
    const Subdivision& sub = out.subdivision;

    for (int i = 0; i < n; ++i) {
        auto named_rect = rect_subset(sub, out.gadget_faces[i]);
        if (static_cast<long long>(named_rect.size()) != 8LL * m + 5)
            st.fail("gadget " + std::to_string(i + 1) + " face census mismatch");

        // No vertex stabs more than two cycle faces, so (8m+4)/2 points are
        // forced; the canonical sets show the bound is tight.
        std::set<int> cycle(out.gadget_cycle[i].begin(), out.gadget_cycle[i].end());
        for (std::size_t v = 0; v < sub.vertices().size(); ++v) {
            int hits = 0;
            for (int f : sub.faces_at_vertex(static_cast<int>(v))) hits += cycle.count(f) ? 1 : 0;
            if (hits > 2) {
                st.fail("a vertex stabs more than two cycle faces in gadget " +
                        std::to_string(i + 1));
                break;
            }
        }

        auto filter = FaceFilter::of(named_rect);
        for (const auto* pts : {&out.points_false[i], &out.points_true[i]}) {
            if (static_cast<long long>(pts->size()) != per_gadget)
                st.fail("canonical set size mismatch in gadget " + std::to_string(i + 1));
            else if (!verify_stab(sub, *pts, filter).feasible)
                st.fail("canonical set infeasible on gadget " + std::to_string(i + 1));
        }

        auto exact = exact_stab(sub, filter, budget);
        if (!exact.optimal)
            st.out_of_budget("gadget " + std::to_string(i + 1) + " exact search");
        else if (static_cast<long long>(exact.size()) != per_gadget)
            st.fail("gadget " + std::to_string(i + 1) + " optimum is " +
                    std::to_string(exact.size()) + ", expected " + std::to_string(per_gadget));
    }
}

void check_face_gadgets(const ReductionOutput& out, const Rp3SatInstance& inst, Variant variant,
                        const SearchBudget& budget, ConverseState& st) {
    const int n = inst.variables;
    const int m = inst.clause_count();
    const bool mis = out.problem == Problem::mis;
    const long long per_gadget = mis ? 4LL * m - 1 : 2LL * m + 2;
    const Subdivision& sub = out.subdivision;

    for (int i = 0; i < n; ++i) {
        std::vector<int> universe = variant == Variant::rect
                                        ? rect_subset(sub, out.gadget_faces[i])
                                        : [&] {
                                              auto u = out.gadget_faces[i];
                                              std::sort(u.begin(), u.end());
                                              return u;
                                          }();
        long long expect_rects = mis ? 8LL * m - 1
                                     : (variant == Variant::rect ? 8LL * m + 8 : 10LL * m + 10);
        if (static_cast<long long>(rect_subset(sub, out.gadget_faces[i]).size()) != expect_rects)
            st.fail("gadget " + std::to_string(i + 1) + " face census mismatch");

        auto filter = FaceFilter::of(universe);
        auto optima = mis ? enumerate_optimal_mis(sub, filter, budget)
                          : enumerate_optimal_mds(sub, filter, budget);
        if (optima.budget_exceeded) {
            st.out_of_budget("gadget " + std::to_string(i + 1) + " optima enumeration");
            continue;
        }
        if (static_cast<long long>(optima.optimum) != per_gadget) {
            st.fail("gadget " + std::to_string(i + 1) + " optimum is " +
                    std::to_string(optima.optimum) + ", expected " + std::to_string(per_gadget));
            continue;
        }
        std::vector<std::vector<int>> expected = {out.faces_false[i], out.faces_true[i]};
        std::sort(expected.begin(), expected.end());
        if (optima.solutions != expected)
            st.fail("gadget " + std::to_string(i + 1) + " has " +
                    std::to_string(optima.solutions.size()) +
                    " optimal solutions, expected exactly the two canonical ones");
    }
}

void check_mis_clause_gadgets(const ReductionOutput& out, const SearchBudget& budget,
                              ConverseState& st) {
    const Subdivision& sub = out.subdivision;
    for (std::size_t a = 0; a < out.clause_info.size(); ++a) {
        const ClauseGeometry& cg = out.clause_info[a];
        auto ring = cg.faces;
        // the enclosed hole conflicts with the whole ring, so adding it must
        // not raise the optimum
        for (const auto& e : out.manifest)
            if (e.cls == FaceClass::outer && e.clause == static_cast<int>(a) + 1)
                ring.push_back(e.face);
        std::sort(ring.begin(), ring.end());
        auto full = exact_mis(sub, FaceFilter::of(ring), budget);
        if (!full.optimal) { st.out_of_budget("clause ring search"); continue; }
        if (full.size() != 4)
            st.fail("clause " + std::to_string(a + 1) + " ring optimum is " +
                    std::to_string(full.size()) + ", expected 4");

        std::vector<int> inner;
        for (int p = 0; p < 9; ++p)
            if (p != kLegPos[0] && p != kLegPos[1] && p != kLegPos[2])
                inner.push_back(cg.faces[p]);
        auto blocked = exact_mis(sub, FaceFilter::of(inner), budget);
        if (blocked.optimal && blocked.size() != 3)
            st.fail("clause " + std::to_string(a + 1) + " blocked optimum is " +
                    std::to_string(blocked.size()) + ", expected 3");

        // each single free leg admits a 4-element choice
        for (int t = 0; t < 3; ++t) {
            std::vector<int> sel;
            for (int pos : kLegPick[t]) sel.push_back(cg.faces[pos]);
            if (!verify_mis(sub, sel, FaceFilter::of(ring)).feasible)
                st.fail("canonical clause pick for leg " + std::to_string(t + 1) +
                        " is not independent");
        }
    }
}

void check_clause_contacts(const ReductionOutput& out, Variant variant, ConverseState& st) {
    const Subdivision& sub = out.subdivision;
    auto rect = rectangular_faces(sub);
    std::set<int> rect_set(rect.begin(), rect.end());
    for (std::size_t a = 0; a < out.clause_info.size(); ++a) {
        const ClauseGeometry& cg = out.clause_info[a];
        if (cg.pierced) continue;
        if (out.problem == Problem::mis) {
            // legs touch exactly their attachment rectangle among the
            // variable faces
            for (int t = 0; t < 3; ++t) {
                int leg = cg.faces[kLegPos[t]];
                std::vector<int> touched;
                for (int g : sub.adjacency()[leg])
                    if (sub.faces()[g].face_class == FaceClass::variable) touched.push_back(g);
                if (touched != std::vector<int>{cg.literal_faces[t]})
                    st.fail("clause " + std::to_string(a + 1) + " leg " + std::to_string(t + 1) +
                            " attachment mismatch");
            }
        } else {
            // the clause rectangle touches exactly the literal faces within
            // the target universe
            int rc = cg.faces[0];
            std::vector<int> touched;
            for (int g : sub.adjacency()[rc]) {
                if (variant == Variant::rect && !rect_set.count(g)) continue;
                if (variant == Variant::all &&
                    sub.faces()[g].face_class == FaceClass::outer)
                    continue;
                touched.push_back(g);
            }
            auto expect = cg.literal_faces;
            std::sort(expect.begin(), expect.end());
            std::sort(touched.begin(), touched.end());
            if (touched != expect)
                st.fail("clause " + std::to_string(a + 1) + " touches " +
                        std::to_string(touched.size()) + " faces, expected its literal faces");
        }
    }
}

}  // namespace

LemmaReport verify_lemma(const Rp3SatInstance& inst, Problem problem, Variant variant,
                         const SearchBudget& budget) {
    LemmaReport rep;
    ReductionOutput out = build_reduction(inst, problem, variant);
    rep.target = out.target;

    SatResult sat = sat_brute_force(inst);
    rep.satisfiable = sat.satisfiable;

    FaceFilter filter = variant == Variant::rect ? FaceFilter::rect() : FaceFilter::all();

    // Forward direction and the canonical-combination scan share one loop:
    // a combination is feasible iff its assignment satisfies the formula.
    rep.forward_ok = true;
    bool exists = false;
    const std::uint32_t total = 1u << inst.variables;
    for (std::uint32_t a = 0; a < total; ++a) {
        bool expected = satisfies(inst, a);
        bool feasible = false;
        try {
            CanonicalSolution sol = canonical_solution(out, a);
            long long size = static_cast<long long>(
                problem == Problem::stab ? sol.points.size() : sol.faces.size());
            feasible = size == out.target &&
                       verify_solution(out.subdivision, problem, sol.points, sol.faces, filter)
                           .feasible;
        } catch (const ReductionError&) {
            feasible = false;
        }
        exists |= feasible;
        if (feasible != expected) {
            rep.forward_ok = false;
            rep.details.push_back("assignment " + std::to_string(a) +
                                  (expected ? " should admit the canonical solution"
                                            : " unexpectedly admits a canonical solution"));
        }
    }
    rep.target_solution_exists = exists;

    // Converse: the per-gadget structure forces any target-size solution to
    // be a canonical combination, so the scan above decides existence.
    ConverseState st;
    st.details = &rep.details;
    bool any_pierced = false;
    for (const auto& cg : out.clause_info) any_pierced |= cg.pierced;

    check_gadget_separation(out, st);
    if (problem == Problem::stab)
        check_stab_gadgets(out, inst, budget, st);
    else
        check_face_gadgets(out, inst, variant, budget, st);
    if (problem == Problem::mis) check_mis_clause_gadgets(out, budget, st);
    check_clause_contacts(out, variant, st);

    if (exists != sat.satisfiable) {
        st.fail(std::string("canonical combinations ") + (exists ? "reach" : "miss") +
                " the target although the formula is " +
                (sat.satisfiable ? "satisfiable" : "unsatisfiable"));
    }

    // Bounded background faces (anything outer beyond the enclosed clause
    // holes) enter the all-faces universe. Canonical stabbing points sit on
    // the outer lines and cover them maximally, so the combination scan stays
    // decisive for the stabbing problem; for the face problems a background
    // face could in principle stand in for a gadget face, which the
    // per-gadget searches cannot rule out.
    bool background = false;
    for (const auto& e : out.manifest)
        if (e.cls == FaceClass::outer && e.clause == 0) background = true;
    bool undecidable = variant == Variant::all && problem != Problem::stab && background;
    if (undecidable)
        rep.details.push_back("bounded background faces in an all-faces reduction");

    // On instances small enough, a whole-subdivision exact solve decides the
    // target question outright, independent of the gadget structure. It both
    // cross-validates the combination scan and settles the cases the
    // per-gadget argument cannot.
    const std::size_t universe = filter.resolve(out.subdivision).size();
    if (universe <= 48 && !st.failed) {
        bool solved = false, hits_target = false;
        if (problem == Problem::stab) {
            auto g = exact_stab(out.subdivision, filter, budget);
            solved = g.optimal;
            hits_target = static_cast<long long>(g.size()) <= out.target;
        } else if (problem == Problem::mis) {
            auto g = exact_mis(out.subdivision, filter, budget);
            solved = g.optimal;
            hits_target = static_cast<long long>(g.size()) >= out.target;
        } else {
            auto g = exact_mds(out.subdivision, filter, budget);
            solved = g.optimal;
            hits_target = static_cast<long long>(g.size()) <= out.target;
        }
        if (solved) {
            rep.details.push_back("global optimum cross-checked");
            if (hits_target != exists)
                st.fail(std::string("global search ") +
                        (hits_target ? "reaches" : "misses") +
                        " the target but the combination scan says otherwise");
            else
                undecidable = false;  // decided exactly, no structural caveat left
        }
    }

    if (st.exhausted)
        rep.converse = LemmaReport::Converse::inconclusive;
    else if (!st.failed)
        rep.converse = undecidable ? LemmaReport::Converse::inconclusive
                                   : LemmaReport::Converse::verified;
    else if (any_pierced)
        // stacked clauses sharing a middle variable cannot be drawn without
        // running legs through lower rectangles; structural mismatches on
        // such instances are expected, not disproofs
        rep.converse = LemmaReport::Converse::inconclusive;
    else
        rep.converse = LemmaReport::Converse::refuted;

    if (any_pierced) rep.details.push_back("instance has pierced clause gadgets");
    return rep;
}

}  // namespace subcover
