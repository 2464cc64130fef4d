#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

#include "subcover/solvers.hpp"

namespace subcover {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point end;
    std::int64_t max_nodes;
    std::int64_t nodes = 0;
    bool hit = false;

    explicit Deadline(const SearchBudget& b)
        : end(Clock::now() + std::chrono::milliseconds(b.max_millis)), max_nodes(b.max_nodes) {
        assert(b.max_nodes > 0 && b.max_millis > 0);
    }

    bool spent() {
        if (hit) return true;
        nodes++;
        if (nodes > max_nodes || ((nodes & 1023) == 0 && Clock::now() > end)) hit = true;
        return hit;
    }
};

// Adjacency graph restricted to the target faces; vertices are positions into
// the target list (which is sorted by face id).
struct FaceGraph {
    std::vector<int> target;
    std::vector<std::vector<int>> adj;  // positions, sorted

    int n() const { return static_cast<int>(target.size()); }
    bool edge(int a, int b) const { return std::binary_search(adj[a].begin(), adj[a].end(), b); }
};

FaceGraph make_face_graph(const Subdivision& sub, const FaceFilter& filter) {
    FaceGraph g;
    g.target = filter.resolve(sub);
    std::vector<int> pos(sub.face_count(), -1);
    for (std::size_t i = 0; i < g.target.size(); ++i) pos[g.target[i]] = static_cast<int>(i);
    g.adj.resize(g.target.size());
    for (std::size_t i = 0; i < g.target.size(); ++i)
        for (int nbr : sub.adjacency()[g.target[i]])
            if (pos[nbr] >= 0) g.adj[i].push_back(pos[nbr]);
    return g;
}

FaceSolution to_face_solution(const FaceGraph& g, const std::vector<int>& positions,
                              std::string algo) {
    FaceSolution out;
    out.algorithm = std::move(algo);
    for (int p : positions) out.face_ids.push_back(g.target[p]);
    std::sort(out.face_ids.begin(), out.face_ids.end());
    return out;
}

std::vector<int> greedy_independent(const FaceGraph& g) {
    std::vector<char> avail(g.n(), 1);
    std::vector<int> chosen;
    while (true) {
        int best = -1, best_deg = INT32_MAX;
        for (int v = 0; v < g.n(); ++v) {
            if (!avail[v]) continue;
            int deg = 0;
            for (int u : g.adj[v]) deg += avail[u];
            if (deg < best_deg) { best_deg = deg; best = v; }
        }
        if (best < 0) break;
        chosen.push_back(best);
        avail[best] = 0;
        for (int u : g.adj[best]) avail[u] = 0;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::vector<int> greedy_dominating(const FaceGraph& g) {
    std::vector<char> dominated(g.n(), 0);
    int left = g.n();
    std::vector<int> chosen;
    while (left > 0) {
        int best = -1, best_gain = -1;
        for (int v = 0; v < g.n(); ++v) {
            int gain = !dominated[v];
            for (int u : g.adj[v]) gain += !dominated[u];
            if (gain > best_gain) { best_gain = gain; best = v; }
        }
        chosen.push_back(best);
        if (!dominated[best]) { dominated[best] = 1; left--; }
        for (int u : g.adj[best])
            if (!dominated[u]) { dominated[u] = 1; left--; }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// ---- maximum independent set ----

struct MisSearch {
    const FaceGraph& g;
    Deadline& dl;
    std::vector<char> state;  // 0 undecided, 1 in, 2 out
    std::vector<int> chosen;
    std::vector<int> best;
    bool collect_all;
    std::size_t opt = 0;  // only when collecting
    std::vector<std::vector<int>>* all = nullptr;

    MisSearch(const FaceGraph& graph, Deadline& d) : g(graph), dl(d), state(graph.n(), 0), collect_all(false) {}

    // Greedy clique cover of the undecided vertices; each clique contributes
    // at most one vertex to any independent set.
    std::size_t upper_bound() const {
        std::vector<char> left = state;
        std::size_t cliques = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (left[v] != 0) continue;
            cliques++;
            std::vector<int> clique{v};
            left[v] = 3;
            for (int u : g.adj[v]) {
                if (left[u] != 0) continue;
                bool fits = true;
                for (int w : clique)
                    if (u != w && !g.edge(u, w)) { fits = false; break; }
                if (fits) { clique.push_back(u); left[u] = 3; }
            }
        }
        return cliques;
    }

    void leaf() {
        if (collect_all) {
            if (chosen.size() == opt) {
                auto s = chosen;
                std::sort(s.begin(), s.end());
                all->push_back(s);
            }
        } else if (chosen.size() > best.size()) {
            best = chosen;
        }
    }

    void run() {
        if (dl.spent()) return;
        int pick = -1, best_deg = -1;
        for (int v = 0; v < g.n(); ++v) {
            if (state[v] != 0) continue;
            int deg = 0;
            for (int u : g.adj[v]) deg += state[u] == 0;
            if (deg > best_deg) { best_deg = deg; pick = v; }
        }
        if (pick < 0) { leaf(); return; }
        std::size_t bound = chosen.size() + upper_bound();
        if (!collect_all && bound <= best.size()) return;
        if (collect_all && bound < opt) return;

        // include
        std::vector<int> flipped;
        state[pick] = 1;
        chosen.push_back(pick);
        for (int u : g.adj[pick])
            if (state[u] == 0) { state[u] = 2; flipped.push_back(u); }
        run();
        chosen.pop_back();
        for (int u : flipped) state[u] = 0;
        // exclude
        state[pick] = 2;
        run();
        state[pick] = 0;
    }
};

// ---- minimum dominating set ----

struct MdsSearch {
    const FaceGraph& g;
    Deadline& dl;
    std::vector<char> state;     // 0 undecided, 1 in, 2 out
    std::vector<int> dom_count;  // how many chosen faces dominate v
    int undominated;
    std::vector<int> chosen;
    std::vector<int> best;
    bool collect_all = false;
    std::size_t opt = 0;
    std::vector<std::vector<int>>* all = nullptr;

    MdsSearch(const FaceGraph& graph, Deadline& d, std::vector<int> incumbent)
        : g(graph), dl(d), state(graph.n(), 0), dom_count(graph.n(), 0), undominated(graph.n()),
          best(std::move(incumbent)) {}

    bool dominates(int v, int u) const { return v == u || g.edge(v, u); }

    // Available dominators of an undominated face: closed neighborhood minus
    // excluded faces. Greedily packing faces with pairwise disjoint available
    // sets lower-bounds the remaining cost; returns -1 when some face cannot
    // be dominated at all.
    int lower_bound() const {
        std::vector<char> used(g.n(), 0);
        int pack = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (dom_count[v] > 0) continue;
            bool any = false, free = true;
            if (state[v] != 2) { any = true; free = !used[v]; }
            for (int u : g.adj[v]) {
                if (state[u] == 2) continue;
                any = true;
                if (used[u]) free = false;
            }
            if (!any) return -1;
            if (!free) continue;
            pack++;
            if (state[v] != 2) used[v] = 1;
            for (int u : g.adj[v])
                if (state[u] != 2) used[u] = 1;
        }
        return pack;
    }

    void take(int v, std::vector<int>& delta) {
        state[v] = 1;
        chosen.push_back(v);
        if (dom_count[v]++ == 0) { undominated--; delta.push_back(v); }
        for (int u : g.adj[v])
            if (dom_count[u]++ == 0) { undominated--; delta.push_back(u); }
    }

    void untake(int v, const std::vector<int>& delta) {
        state[v] = 0;
        chosen.pop_back();
        dom_count[v]--;
        for (int u : g.adj[v]) dom_count[u]--;
        undominated += static_cast<int>(delta.size());
    }

    void leaf() {
        if (collect_all) {
            if (chosen.size() == opt) {
                auto s = chosen;
                std::sort(s.begin(), s.end());
                all->push_back(s);
            }
        } else if (chosen.size() < best.size()) {
            best = chosen;
        }
    }

    void run() {
        if (dl.spent()) return;
        if (undominated == 0) { leaf(); return; }
        int lb = lower_bound();
        if (lb < 0) return;
        std::size_t need = chosen.size() + static_cast<std::size_t>(lb);
        if (!collect_all && need >= best.size()) return;
        if (collect_all && need > opt) return;

        // Highest-degree undecided face, degree measured as undominated
        // coverage; skip faces that no longer help.
        int pick = -1, best_gain = 0;
        for (int v = 0; v < g.n(); ++v) {
            if (state[v] != 0) continue;
            int gain = dom_count[v] == 0;
            for (int u : g.adj[v]) gain += dom_count[u] == 0;
            if (gain > best_gain) { best_gain = gain; pick = v; }
        }
        if (pick < 0) return;  // undominated faces left but nothing helps

        std::vector<int> delta;
        take(pick, delta);
        run();
        untake(pick, delta);
        state[pick] = 2;
        run();
        state[pick] = 0;
    }
};

}  // namespace

FaceSolution greedy_mis(const Subdivision& sub, const FaceFilter& target) {
    auto g = make_face_graph(sub, target);
    return to_face_solution(g, greedy_independent(g), "greedy");
}

FaceSolution greedy_mds(const Subdivision& sub, const FaceFilter& target) {
    auto g = make_face_graph(sub, target);
    return to_face_solution(g, greedy_dominating(g), "greedy");
}

FaceSolution exact_mis(const Subdivision& sub, const FaceFilter& target,
                       const SearchBudget& budget) {
    auto g = make_face_graph(sub, target);
    Deadline dl(budget);
    MisSearch search(g, dl);
    search.best = greedy_independent(g);
    search.run();
    auto sol = to_face_solution(g, search.best, "exact");
    sol.budget_exceeded = dl.hit;
    sol.optimal = !dl.hit;
    return sol;
}

FaceSolution exact_mds(const Subdivision& sub, const FaceFilter& target,
                       const SearchBudget& budget) {
    auto g = make_face_graph(sub, target);
    Deadline dl(budget);
    MdsSearch search(g, dl, greedy_dominating(g));
    search.run();
    auto sol = to_face_solution(g, search.best, "exact");
    sol.budget_exceeded = dl.hit;
    sol.optimal = !dl.hit;
    return sol;
}

OptimaEnumeration enumerate_optimal_mis(const Subdivision& sub, const FaceFilter& target,
                                        const SearchBudget& budget) {
    OptimaEnumeration out;
    auto first = exact_mis(sub, target, budget);
    if (!first.optimal) { out.budget_exceeded = true; return out; }
    out.optimum = first.size();

    auto g = make_face_graph(sub, target);
    Deadline dl(budget);
    MisSearch search(g, dl);
    search.collect_all = true;
    search.opt = out.optimum;
    search.all = &out.solutions;
    search.run();
    if (dl.hit) { out.budget_exceeded = true; out.solutions.clear(); return out; }
    for (auto& s : out.solutions)
        for (int& p : s) p = g.target[p];
    std::sort(out.solutions.begin(), out.solutions.end());
    out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()),
                        out.solutions.end());
    return out;
}

OptimaEnumeration enumerate_optimal_mds(const Subdivision& sub, const FaceFilter& target,
                                        const SearchBudget& budget) {
    OptimaEnumeration out;
    auto first = exact_mds(sub, target, budget);
    if (!first.optimal) { out.budget_exceeded = true; return out; }
    out.optimum = first.size();

    auto g = make_face_graph(sub, target);
    Deadline dl(budget);
    MdsSearch search(g, dl, {});
    search.best.assign(g.target.begin(), g.target.end());  // any superset bound
    search.collect_all = true;
    search.opt = out.optimum;
    search.all = &out.solutions;
    search.run();
    if (dl.hit) { out.budget_exceeded = true; out.solutions.clear(); return out; }
    for (auto& s : out.solutions)
        for (int& p : s) p = g.target[p];
    std::sort(out.solutions.begin(), out.solutions.end());
    out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()),
                        out.solutions.end());
    return out;
}

namespace {

// Geometric re-check of adjacency: two faces touch iff they own cells within
// Chebyshev distance one. Returns the touching face ids around face f.
std::set<int> touching_faces(const Subdivision& sub, int f) {
    std::set<int> out;
    for (auto [i, j] : sub.faces()[f].cells)
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                int ni = i + di, nj = j + dj;
                if (ni < 0 || nj < 0 || ni >= sub.cols() || nj >= sub.rows()) continue;
                int g = sub.face_at_cell(ni, nj);
                if (g >= 0 && g != f) out.insert(g);
            }
    return out;
}

std::vector<int> checked_face_ids(const Subdivision& sub, const std::vector<int>& ids,
                                  const std::vector<int>& target) {
    std::set<int> seen;
    for (int f : ids) {
        if (f < 0 || f >= sub.face_count() ||
            !std::binary_search(target.begin(), target.end(), f))
            throw GeometryError(GeometryError::Kind::malformed_solution,
                                "face id outside the target set");
        if (!seen.insert(f).second)
            throw GeometryError(GeometryError::Kind::malformed_solution, "duplicate face id");
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

VerifyReport verify_mis(const Subdivision& sub, const std::vector<int>& face_ids,
                        const FaceFilter& target) {
    auto tgt = target.resolve(sub);
    auto sel = checked_face_ids(sub, face_ids, tgt);
    VerifyReport rep;
    for (std::size_t a = 0; a < sel.size(); ++a) {
        auto touch = touching_faces(sub, sel[a]);
        for (std::size_t b = a + 1; b < sel.size(); ++b)
            if (touch.count(sel[b])) rep.violating_pairs.emplace_back(sel[a], sel[b]);
    }
    rep.feasible = rep.violating_pairs.empty();
    return rep;
}

VerifyReport verify_mds(const Subdivision& sub, const std::vector<int>& face_ids,
                        const FaceFilter& target) {
    auto tgt = target.resolve(sub);
    auto sel = checked_face_ids(sub, face_ids, tgt);
    std::set<int> dominated(sel.begin(), sel.end());
    for (int f : sel)
        for (int g : touching_faces(sub, f)) dominated.insert(g);
    VerifyReport rep;
    for (int f : tgt)
        if (!dominated.count(f)) rep.undominated.push_back(f);
    rep.feasible = rep.undominated.empty();
    return rep;
}

VerifyReport verify_solution(const Subdivision& sub, Problem problem,
                             const std::vector<Point>& points, const std::vector<int>& face_ids,
                             const FaceFilter& target) {
    switch (problem) {
        case Problem::stab: return verify_stab(sub, points, target);
        case Problem::mis: return verify_mis(sub, face_ids, target);
        case Problem::mds: return verify_mds(sub, face_ids, target);
    }
    return {};
}

}  // namespace subcover
