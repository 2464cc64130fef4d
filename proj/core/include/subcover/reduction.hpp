#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subcover/solvers.hpp"
#include "subcover/subdivision.hpp"

namespace subcover {

enum class Side { top, bottom };
enum class Variant { rect, all };

const char* side_name(Side s);
const char* variant_name(Variant v);

// One clause of a formula in line order: exactly three signed variable
// indices (1-based, negative means negated) plus the side of the variable
// line its rectangle is drawn on.
struct Clause {
    std::array<int, 3> literals{};
    Side side = Side::top;
};

struct Rp3SatInstance {
    int variables = 0;
    std::vector<Clause> clauses;
    int clause_count() const { return static_cast<int>(clauses.size()); }
};

bool satisfies(const Rp3SatInstance& inst, std::uint32_t assignment);

struct ReductionError : std::runtime_error {
    enum class Kind { layout_invalid, too_large, clause_unsatisfied };
    Kind kind;
    ReductionError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct LayoutViolation {
    std::string what;
    int clause_a = -1;
    int clause_b = -1;
};

// Checks that the instance can be drawn: well-formed clauses, same-side
// spans nested or disjoint, and no clause needs a leg at a variable strictly
// inside the span of a clause drawn below it (such a leg cannot avoid the
// lower clause's rectangle).
std::vector<LayoutViolation> validate_layout(const Rp3SatInstance& inst);

// Per-face entry of the reduction manifest. Every bounded face appears
// exactly once; faces not named by a gadget are classified as outer.
struct ManifestEntry {
    int face = -1;
    FaceClass cls = FaceClass::outer;
    int gadget = 0;  // 1-based variable index, 0 if none
    int clause = 0;  // 1-based clause index, 0 if none
    std::string name;
};

struct ClauseGeometry {
    Side side = Side::top;
    int level = 0;         // nesting height above/below the variable line
    bool pierced = false;  // another clause's geometry runs through this gadget
    std::vector<int> faces;          // faces owned by the clause gadget
    std::vector<int> literal_faces;  // variable faces the gadget touches, in
                                     // literal order (two per literal for the
                                     // stabbing gadget, one otherwise)
};

struct ReductionOutput {
    Problem problem = Problem::stab;
    Variant variant = Variant::rect;
    SegmentSet segments;
    Subdivision subdivision;
    long long target = 0;

    std::vector<ManifestEntry> manifest;
    std::vector<ClauseGeometry> clause_info;

    // Per-variable canonical solutions (index 0 = x1). For the stabbing
    // problem these are point sets; for the face problems, face-id sets.
    // first = selected when the variable is false, second = when true.
    std::vector<std::vector<Point>> points_false, points_true;
    std::vector<std::vector<int>> faces_false, faces_true;

    // Face ids per variable gadget, and the gadget's cycle faces (used by
    // structural checks).
    std::vector<std::vector<int>> gadget_faces;
    std::vector<std::vector<int>> gadget_cycle;

    const ManifestEntry* find_face(const std::string& name, int gadget) const;
};

ReductionOutput build_stab_reduction(const Rp3SatInstance& inst, Variant variant);
ReductionOutput build_mis_reduction(const Rp3SatInstance& inst);
ReductionOutput build_mds_reduction(const Rp3SatInstance& inst, Variant variant);
ReductionOutput build_reduction(const Rp3SatInstance& inst, Problem problem, Variant variant);

// Isolated variable gadget with capacity parameter m, placed at the origin.
// Used by the instance generator and the census checks.
SegmentSet variable_gadget_segments(Problem problem, int m, Variant variant = Variant::rect);

struct SatResult {
    bool satisfiable = false;
    std::uint64_t witness_count = 0;
    std::vector<std::uint32_t> witnesses;  // capped; see kMaxWitnessList
};
inline constexpr std::size_t kMaxWitnessList = 64;

// Exact satisfiability over all 2^n assignments; n must be at most 24.
SatResult sat_brute_force(const Rp3SatInstance& inst);

struct CanonicalSolution {
    std::vector<Point> points;  // stab
    std::vector<int> faces;     // mis / mds
};

// Concatenation of the per-variable canonical solutions selected by the
// assignment (bit i-1 = variable i), plus for independent-set instances the
// four rectangles picked per clause from a free attachment. Throws
// ReductionError(clause_unsatisfied) when a clause has no free attachment.
CanonicalSolution canonical_solution(const ReductionOutput& out, std::uint32_t assignment);

struct LemmaReport {
    enum class Converse { verified, inconclusive, refuted };
    bool satisfiable = false;
    bool forward_ok = false;
    Converse converse = Converse::inconclusive;
    bool target_solution_exists = false;
    long long target = 0;
    std::vector<std::string> details;
    bool ok() const { return forward_ok && converse == Converse::verified; }
};

// Machine check of the reduction correctness on one instance. Forward: for
// every assignment, the canonical solution is feasible iff the assignment
// satisfies the formula. Converse: per-gadget exact searches confirm the
// gadget optima (and, for domination, that the two canonical sets are the
// only optima), then the 2^n canonical combinations decide whether a
// target-size solution exists; the outcome is cross-checked against brute
// force satisfiability.
LemmaReport verify_lemma(const Rp3SatInstance& inst, Problem problem, Variant variant,
                         const SearchBudget& budget = {});

}  // namespace subcover
