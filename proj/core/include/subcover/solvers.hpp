#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subcover/subdivision.hpp"

namespace subcover {

enum class Problem { stab, mis, mds };

const char* problem_name(Problem p);

// Resource cap for the exact searches. Running out is not an error: the best
// incumbent is returned with optimal == false so callers can distinguish
// "inconclusive" from "refuted".
struct SearchBudget {
    std::int64_t max_nodes = 50'000'000;
    std::int64_t max_millis = 60'000;
};

struct PointSolution {
    std::vector<Point> points;
    bool optimal = false;
    bool budget_exceeded = false;
    std::string algorithm;
    std::size_t size() const { return points.size(); }
};

struct FaceSolution {
    std::vector<int> face_ids;
    bool optimal = false;
    bool budget_exceeded = false;
    std::string algorithm;
    std::size_t size() const { return face_ids.size(); }
};

struct LocalSearchConfig {
    int k = 1;                               // swap-size level, >= 1
    std::int64_t max_iterations = 1'000'000;  // improvement steps before giving up
};

// Greedy set cover over the vertex/face incidence: each step picks the vertex
// covering the most uncovered target faces, ties broken by lowest vertex
// index. Since a vertex stabs at most 4 faces the result is within a factor
// H4 = 25/12 of optimal.
PointSolution greedy_stab(const Subdivision& sub, const FaceFilter& target = FaceFilter::all());

// Branch and bound on the set-cover instance: branches on the uncovered face
// with the fewest covering vertices, lower-bounds with a greedy packing of
// faces whose candidate sets are disjoint.
PointSolution exact_stab(const Subdivision& sub, const FaceFilter& target = FaceFilter::all(),
                         const SearchBudget& budget = {});

// k-level local search, starting from the full vertex set. Repeatedly looks
// for X' within the current solution and Y within the vertices with
// |Y| < |X'| <= k such that the swap stays feasible; subsets are scanned in
// lexicographic order, first improvement is applied. The result is k-locally
// optimal unless the iteration cap was hit.
PointSolution local_search_stab(const Subdivision& sub, const LocalSearchConfig& cfg,
                                const FaceFilter& target = FaceFilter::all());

// Maximum pairwise non-adjacent face set / minimum dominating face set over
// the target faces (a face dominates itself and its neighbors; adjacency is
// restricted to the target set).
FaceSolution exact_mis(const Subdivision& sub, const FaceFilter& target = FaceFilter::all(),
                       const SearchBudget& budget = {});
FaceSolution exact_mds(const Subdivision& sub, const FaceFilter& target = FaceFilter::all(),
                       const SearchBudget& budget = {});

// Feasible-only heuristics: minimum-degree greedy for independence,
// max-coverage greedy for domination.
FaceSolution greedy_mis(const Subdivision& sub, const FaceFilter& target = FaceFilter::all());
FaceSolution greedy_mds(const Subdivision& sub, const FaceFilter& target = FaceFilter::all());

// Every optimal solution, for instances small enough to enumerate. Used by
// the lemma verifier to check uniqueness claims. Sets are sorted; the outer
// list is sorted as well. Empty when the budget ran out (check the flag).
struct OptimaEnumeration {
    std::size_t optimum = 0;
    std::vector<std::vector<int>> solutions;
    bool budget_exceeded = false;
};
OptimaEnumeration enumerate_optimal_mis(const Subdivision& sub, const FaceFilter& target,
                                        const SearchBudget& budget = {});
OptimaEnumeration enumerate_optimal_mds(const Subdivision& sub, const FaceFilter& target,
                                        const SearchBudget& budget = {});

// Feasibility report, recomputed from cell geometry rather than the solver
// code paths. Throws GeometryError(malformed_solution) for points that are
// not vertices or face ids outside the subdivision.
struct VerifyReport {
    bool feasible = false;
    std::vector<int> unstabbed;                       // stab: target faces missed
    std::vector<std::pair<int, int>> violating_pairs;  // mis: adjacent selected pairs
    std::vector<int> undominated;                     // mds: target faces not dominated
};
VerifyReport verify_solution(const Subdivision& sub, Problem problem,
                             const std::vector<Point>& points, const std::vector<int>& face_ids,
                             const FaceFilter& target);

VerifyReport verify_stab(const Subdivision& sub, const std::vector<Point>& points,
                         const FaceFilter& target);
VerifyReport verify_mis(const Subdivision& sub, const std::vector<int>& face_ids,
                        const FaceFilter& target);
VerifyReport verify_mds(const Subdivision& sub, const std::vector<int>& face_ids,
                        const FaceFilter& target);

}  // namespace subcover
