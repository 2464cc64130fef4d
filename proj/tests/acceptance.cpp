// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each. Exits nonzero if any criterion fails. Runs the full corpus fresh on
// every invocation; everything is seeded and deterministic.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "subcover/generate.hpp"
#include "subcover/reduction.hpp"
#include "subcover/solvers.hpp"
#include "subcover/subdivision.hpp"

using namespace subcover;

namespace {

int failures = 0;

// Wall-clock budget per criterion, milliseconds. Exceeding it fails the
// criterion just like a wrong answer would.
struct Timed {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long limit_ms;
    explicit Timed(long long limit) : limit_ms(limit) {}
    long long elapsed() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int criterion, const std::string& name, bool pass, const Timed& timer,
            const std::string& note = "") {
    long long ms = timer.elapsed();
    bool in_time = ms <= timer.limit_ms;
    std::printf("criterion %d (%s): %s [%lld ms, budget %lld]%s%s\n", criterion, name.c_str(),
                pass && in_time ? "PASS" : "FAIL", ms, timer.limit_ms, note.empty() ? "" : " - ",
                note.c_str());
    if (!pass || !in_time) failures++;
}

struct CorpusEntry {
    std::string name;
    SegmentSet segments;
    Subdivision sub;
};

// 200 seeded instances: guillotine partitions up to 12 rooms, grids up to
// 4x4, and the three unit-capacity variable gadgets.
std::vector<CorpusEntry> make_corpus() {
    std::vector<CorpusEntry> corpus;
    auto add = [&](std::string name, SegmentSet segs) {
        Subdivision sub = build_subdivision(segs);
        corpus.push_back({std::move(name), std::move(segs), std::move(sub)});
    };
    for (int rooms = 2; rooms <= 12; ++rooms)
        for (std::uint64_t seed = 1; seed <= 16; ++seed) {
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::guillotine;
            spec.rooms = rooms;
            spec.seed = seed;
            add("guillotine r" + std::to_string(rooms) + " s" + std::to_string(seed),
                generate(spec));
        }
    for (int rows = 1; rows <= 4; ++rows)
        for (int cols = 1; cols <= 4; ++cols) {
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::grid;
            spec.rows = rows;
            spec.cols = cols;
            add("grid " + std::to_string(rows) + "x" + std::to_string(cols), generate(spec));
        }
    for (Problem p : {Problem::stab, Problem::mis, Problem::mds})
        add(std::string("gadget ") + problem_name(p), variable_gadget_segments(p, 1));
    for (int rooms = 2; rooms <= 6; ++rooms) {
        GeneratorSpec spec;
        spec.kind = GeneratorSpec::Kind::guillotine;
        spec.rooms = rooms;
        spec.seed = 17;
        add("guillotine r" + std::to_string(rooms) + " s17", generate(spec));
    }
    return corpus;
}

Rp3SatInstance single_clause_instance() {
    Rp3SatInstance inst;
    inst.variables = 3;
    inst.clauses.push_back({{1, -2, 3}, Side::top});
    return inst;
}

Rp3SatInstance sign_cube() {
    Rp3SatInstance inst;
    inst.variables = 3;
    int at = 0;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) {
                Clause c;
                c.literals = {s1 * 1, s2 * 2, s3 * 3};
                c.side = (at++ % 2 == 0) ? Side::top : Side::bottom;
                inst.clauses.push_back(c);
            }
    return inst;
}

// 1. Gadget census: segment and rectangular-face counts match the closed
//    formulas for m = 1, 2, 3.
void criterion_census() {
    Timed timer(1'000);
    bool pass = true;
    std::string note;
    for (int m = 1; m <= 3 && pass; ++m) {
        auto stab_segs = variable_gadget_segments(Problem::stab, m);
        int vertical = 0, horizontal = 0;
        for (const Segment& s : stab_segs.segments()) (s.vertical() ? vertical : horizontal)++;
        auto nrect = [](const SegmentSet& segs) {
            return static_cast<long long>(rectangular_faces(build_subdivision(segs)).size());
        };
        if (vertical != 8 * m + 4 || horizontal != 4) {
            pass = false;
            note = "segment census off at m=" + std::to_string(m);
        } else if (nrect(stab_segs) != 8 * m + 5) {
            pass = false;
            note = "stab faces off at m=" + std::to_string(m);
        } else if (nrect(variable_gadget_segments(Problem::mis, m)) != 8 * m - 1) {
            pass = false;
            note = "independent-set faces off at m=" + std::to_string(m);
        } else if (nrect(variable_gadget_segments(Problem::mds, m)) != 8 * m + 8) {
            pass = false;
            note = "dominating-set faces off at m=" + std::to_string(m);
        }
    }
    report(1, "gadget census", pass, timer, note);
}

// 2. Gadget optima by enumeration at m = 1, including the uniqueness of the
//    two canonical dominating sets.
void criterion_gadget_optima() {
    Timed timer(3 * 10'000);
    bool pass = true;
    std::string note;

    auto stab_sub = build_subdivision(variable_gadget_segments(Problem::stab, 1));
    auto stab_opt = exact_stab(stab_sub, FaceFilter::rect());
    if (!stab_opt.optimal || stab_opt.size() != 6) { pass = false; note = "stab optimum"; }

    auto mis_sub = build_subdivision(variable_gadget_segments(Problem::mis, 1));
    auto mis_opt = exact_mis(mis_sub, FaceFilter::rect());
    if (!mis_opt.optimal || mis_opt.size() != 3) { pass = false; note = "independent optimum"; }

    auto mds_sub = build_subdivision(variable_gadget_segments(Problem::mds, 1));
    auto mds_opt = enumerate_optimal_mds(mds_sub, FaceFilter::rect());
    if (mds_opt.optimum != 4 || mds_opt.solutions.size() != 2) {
        pass = false;
        note = "dominating optimum or uniqueness";
    }

    // the two optima are exactly the canonical per-variable sets
    auto out = build_mds_reduction(single_clause_instance(), Variant::rect);
    for (std::size_t i = 0; i < 3 && pass; ++i) {
        std::vector<int> rect;
        for (int f : out.gadget_faces[i])
            if (out.subdivision.faces()[f].is_rectangle) rect.push_back(f);
        std::sort(rect.begin(), rect.end());
        auto optima = enumerate_optimal_mds(out.subdivision, FaceFilter::of(rect));
        std::vector<std::vector<int>> expect = {out.faces_false[i], out.faces_true[i]};
        std::sort(expect.begin(), expect.end());
        if (optima.optimum != 4 || optima.solutions != expect) {
            pass = false;
            note = "canonical dominating sets differ in gadget " + std::to_string(i + 1);
        }
    }
    report(2, "gadget optima m=1", pass, timer, note);
}

// 3. Lemma round trip: forward and converse checks on the satisfiable
//    single-clause instance for all three problems, and on the unsatisfiable
//    sign cube for the stabbing problem.
void criterion_lemma() {
    Timed timer(120'000);
    bool pass = true;
    std::string note;
    struct Want { Problem p; long long target; };
    for (Want w : {Want{Problem::stab, 18}, Want{Problem::mis, 13}, Want{Problem::mds, 12}}) {
        auto rep = verify_lemma(single_clause_instance(), w.p, Variant::rect);
        if (!rep.satisfiable || !rep.forward_ok ||
            rep.converse != LemmaReport::Converse::verified || rep.target != w.target ||
            !rep.target_solution_exists) {
            pass = false;
            note = std::string(problem_name(w.p)) + " round trip failed";
        }
    }
    auto cube = verify_lemma(sign_cube(), Problem::stab, Variant::rect);
    if (cube.satisfiable || !cube.forward_ok ||
        cube.converse != LemmaReport::Converse::verified || cube.target_solution_exists) {
        pass = false;
        note = "sign cube";
    }
    report(3, "lemma round trip", pass, timer, note);
}

// 4. Greedy guarantee: size ratio at most H4 = 25/12 against the exact
//    optimum across the whole corpus.
void criterion_greedy(const std::vector<CorpusEntry>& corpus) {
    Timed timer(60'000);
    int violations = 0, completed = 0;
    for (const auto& e : corpus) {
        auto exact = exact_stab(e.sub);
        if (!exact.optimal) continue;
        completed++;
        auto greedy = greedy_stab(e.sub);
        if (12 * greedy.size() > 25 * exact.size()) violations++;
    }
    report(4, "greedy harmonic bound", violations == 0 && completed == 200, timer,
           std::to_string(completed) + "/200 instances, " + std::to_string(violations) +
               " violations");
}

// 5. Local search: level 3 results are verified 3-locally optimal and never
//    beat the optimum; with the level covering the whole solution the result
//    equals the optimum on instances with at most 12 vertices.
void criterion_local_search(const std::vector<CorpusEntry>& corpus) {
    Timed timer(120'000);
    bool pass = true;
    std::string note;
    int small = 0;
    for (const auto& e : corpus) {
        auto exact = exact_stab(e.sub);
        auto ls = local_search_stab(e.sub, {3, 1'000'000});
        if (ls.budget_exceeded || ls.size() < exact.size() ||
            !verify_stab(e.sub, ls.points, FaceFilter::all()).feasible ||
            !oracle::is_k_locally_optimal(e.sub, ls.points, 3, FaceFilter::all())) {
            pass = false;
            note = "level-3 failure on " + e.name;
            break;
        }
        if (e.sub.vertices().size() <= 12) {
            small++;
            auto full = local_search_stab(
                e.sub, {static_cast<int>(e.sub.vertices().size()), 1'000'000});
            if (!full.optimal || full.size() != exact.size()) {
                pass = false;
                note = "unbounded-level failure on " + e.name;
                break;
            }
        }
    }
    if (pass && small == 0) { pass = false; note = "no small instances in corpus"; }
    report(5, "local search", pass, timer, note);
}

// 6. Guard bound: ceil(rooms / 2) points always suffice on guillotine
//    partitions.
void criterion_guard_bound() {
    Timed timer(30'000);
    int checked = 0, violations = 0;
    for (int rooms = 3; rooms <= 12; ++rooms)
        for (std::uint64_t seed = 101; seed <= 110; ++seed) {
            GeneratorSpec spec;
            spec.kind = GeneratorSpec::Kind::guillotine;
            spec.rooms = rooms;
            spec.seed = seed;
            auto sub = build_subdivision(generate(spec));
            auto exact = exact_stab(sub);
            checked++;
            if (!exact.optimal || 2 * exact.size() > static_cast<std::size_t>(rooms) + 1)
                violations++;
        }
    report(6, "guard bound", checked == 100 && violations == 0, timer,
           std::to_string(checked) + " partitions, " + std::to_string(violations) +
               " violations");
}

// 7. Geometry oracle: Euler identity on every corpus build plus flood-fill
//    vs. segment-crossing point location on up to 1000 sampled cells.
void criterion_geometry_oracle(const std::vector<CorpusEntry>& corpus) {
    Timed timer(120'000);
    bool pass = true;
    std::string note;
    std::mt19937_64 rng(20240817);
    for (const auto& e : corpus) {
        long long euler = static_cast<long long>(e.sub.graph_edge_count()) -
                          static_cast<long long>(e.sub.graph_vertex_count()) +
                          static_cast<long long>(e.sub.graph_component_count());
        if (euler != e.sub.face_count()) {
            pass = false;
            note = "Euler identity on " + e.name;
            break;
        }
        auto rl = oracle::refined_point_location(e.segments);
        std::map<int, int> fwd;
        std::map<int, int> rev;
        const int cells = e.sub.cols() * e.sub.rows();
        const int samples = std::min(1000, cells);
        bool mismatch = false;
        for (int s = 0; s < samples && !mismatch; ++s) {
            int ci, cj;
            if (samples == cells) {
                ci = s % e.sub.cols();
                cj = s / e.sub.cols();
            } else {
                ci = static_cast<int>(rng() % e.sub.cols());
                cj = static_cast<int>(rng() % e.sub.rows());
            }
            int got = e.sub.face_at_cell(ci, cj);
            int want = oracle::refined_label_of_cell(rl, e.sub, ci, cj);
            if (got == Subdivision::kUnbounded) {
                mismatch = want != -1;
                continue;
            }
            if (want == -1) { mismatch = true; break; }
            auto [fit, f_new] = fwd.try_emplace(got, want);
            auto [rit, r_new] = rev.try_emplace(want, got);
            if (fit->second != want || rit->second != got) mismatch = true;
        }
        if (mismatch) {
            pass = false;
            note = "point location on " + e.name;
            break;
        }
    }
    report(7, "geometry oracle", pass, timer, note);
}

// 8. The branch-and-bound solvers agree with plain subset enumeration on
//    every corpus instance small enough to enumerate.
void criterion_exact_oracle(const std::vector<CorpusEntry>& corpus) {
    Timed timer(120'000);
    bool pass = true;
    int checked = 0;
    std::string note;
    for (const auto& e : corpus) {
        if (e.sub.face_count() > 16 || e.sub.vertices().size() > 20) continue;
        checked++;
        if (exact_stab(e.sub).size() != oracle::brute_force_stab(e.sub, FaceFilter::all())) {
            pass = false;
            note = "stab mismatch on " + e.name;
            break;
        }
        if (exact_mis(e.sub).size() != oracle::brute_force_mis(e.sub, FaceFilter::all())) {
            pass = false;
            note = "independent mismatch on " + e.name;
            break;
        }
        if (exact_mds(e.sub).size() != oracle::brute_force_mds(e.sub, FaceFilter::all())) {
            pass = false;
            note = "dominating mismatch on " + e.name;
            break;
        }
    }
    if (pass && checked < 20) { pass = false; note = "too few small instances"; }
    report(8, "exact-solver oracle", pass, timer, std::to_string(checked) + " instances checked" +
                                               (note.empty() ? "" : "; " + note));
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    auto corpus = make_corpus();
    std::printf("corpus: %zu instances\n", corpus.size());

    criterion_census();
    criterion_gadget_optima();
    criterion_lemma();
    criterion_greedy(corpus);
    criterion_local_search(corpus);
    criterion_guard_bound();
    criterion_geometry_oracle(corpus);
    criterion_exact_oracle(corpus);

    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("%s (%lld ms, %d failed)\n", failures == 0 ? "ALL PASS" : "FAILURES",
                static_cast<long long>(dt), failures);
    return failures == 0 ? 0 : 1;
}
