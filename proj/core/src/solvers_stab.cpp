#include <algorithm>
#include <cassert>
#include <chrono>
#include <set>

#include "subcover/solvers.hpp"

namespace subcover {

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::stab: return "stab";
        case Problem::mis: return "mis";
        case Problem::mds: return "mds";
    }
    return "?";
}

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

// Set-cover view of a stabbing instance: elements are positions into the
// target list, sets are the subdivision vertices.
struct StabInstance {
    std::vector<int> target;                 // face ids
    std::vector<std::vector<int>> cover;     // vertex -> target positions, sorted
    std::vector<std::vector<int>> cands;     // target position -> covering vertices
};

StabInstance make_stab_instance(const Subdivision& sub, const FaceFilter& filter) {
    StabInstance inst;
    inst.target = filter.resolve(sub);
    std::vector<int> pos(sub.face_count(), -1);
    for (std::size_t i = 0; i < inst.target.size(); ++i) pos[inst.target[i]] = static_cast<int>(i);

    const std::size_t nv = sub.vertices().size();
    inst.cover.resize(nv);
    inst.cands.resize(inst.target.size());
    for (std::size_t v = 0; v < nv; ++v) {
        for (int f : sub.faces_at_vertex(static_cast<int>(v)))
            if (pos[f] >= 0) inst.cover[v].push_back(pos[f]);
        for (int p : inst.cover[v]) inst.cands[p].push_back(static_cast<int>(v));
    }
    // Every bounded face has a corner where a horizontal and a vertical piece
    // of the union meet, and such corners are vertices.
    for ([[maybe_unused]] const auto& c : inst.cands) assert(!c.empty());
    return inst;
}

std::vector<int> greedy_cover(const StabInstance& inst) {
    std::vector<char> covered(inst.target.size(), 0);
    std::size_t left = inst.target.size();
    std::vector<int> chosen;
    while (left > 0) {
        int best_v = -1, best_gain = 0;
        for (std::size_t v = 0; v < inst.cover.size(); ++v) {
            int gain = 0;
            for (int p : inst.cover[v]) gain += !covered[p];
            if (gain > best_gain) {
                best_gain = gain;
                best_v = static_cast<int>(v);
            }
        }
        assert(best_v >= 0);
        chosen.push_back(best_v);
        for (int p : inst.cover[best_v])
            if (!covered[p]) { covered[p] = 1; left--; }
    }
    return chosen;
}

PointSolution to_point_solution(const Subdivision& sub, const std::vector<int>& verts,
                                std::string algo) {
    PointSolution out;
    out.algorithm = std::move(algo);
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    for (int v : sorted) out.points.push_back(sub.vertices()[v]);
    return out;
}

struct CoverSearch {
    const StabInstance& inst;
    Deadline& dl;
    std::vector<char> covered;
    std::size_t uncovered;
    std::vector<int> chosen;
    std::vector<int> best;
    mutable std::vector<char> cand_used;  // scratch for the packing bound

    CoverSearch(const StabInstance& i, Deadline& d, std::vector<int> incumbent)
        : inst(i), dl(d), covered(i.target.size(), 0), uncovered(i.target.size()),
          best(std::move(incumbent)), cand_used(i.cover.size(), 0) {}

    // Greedy packing of uncovered faces with pairwise disjoint candidate
    // sets; each packed face needs its own point.
    std::size_t lower_bound() const {
        std::fill(cand_used.begin(), cand_used.end(), 0);
        std::size_t pack = 0;
        for (std::size_t p = 0; p < inst.target.size(); ++p) {
            if (covered[p]) continue;
            bool free = true;
            for (int v : inst.cands[p])
                if (cand_used[v]) { free = false; break; }
            if (!free) continue;
            pack++;
            for (int v : inst.cands[p]) cand_used[v] = 1;
        }
        std::size_t by_degree = (uncovered + 3) / 4;  // a vertex stabs at most 4 faces
        return std::max(pack, by_degree);
    }

    void take(int v, std::vector<int>& delta) {
        chosen.push_back(v);
        for (int p : inst.cover[v])
            if (!covered[p]) {
                covered[p] = 1;
                uncovered--;
                delta.push_back(p);
            }
    }

    void untake(const std::vector<int>& delta) {
        chosen.pop_back();
        for (int p : delta) {
            covered[p] = 0;
            uncovered++;
        }
    }

    void run() {
        if (dl.spent()) return;
        if (uncovered == 0) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        if (chosen.size() + lower_bound() >= best.size()) return;

        int pick = -1;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t p = 0; p < inst.target.size(); ++p)
            if (!covered[p] && inst.cands[p].size() < fewest) {
                fewest = inst.cands[p].size();
                pick = static_cast<int>(p);
            }

        // The chosen face must be covered by one of its candidates; try the
        // ones with the largest remaining gain first.
        std::vector<std::pair<int, int>> order;  // (-gain, vertex)
        for (int v : inst.cands[pick]) {
            int gain = 0;
            for (int p : inst.cover[v]) gain += !covered[p];
            order.emplace_back(-gain, v);
        }
        std::sort(order.begin(), order.end());
        std::vector<int> delta;
        for (auto [neg_gain, v] : order) {
            (void)neg_gain;
            delta.clear();
            take(v, delta);
            run();
            untake(delta);
            if (dl.spent()) return;
        }
    }
};

}  // namespace

PointSolution greedy_stab(const Subdivision& sub, const FaceFilter& target) {
    auto inst = make_stab_instance(sub, target);
    auto sol = to_point_solution(sub, greedy_cover(inst), "greedy");
    sol.optimal = sol.points.size() <= 1;  // 0 or 1 points cannot be beaten
    return sol;
}

PointSolution exact_stab(const Subdivision& sub, const FaceFilter& target,
                         const SearchBudget& budget) {
    auto inst = make_stab_instance(sub, target);
    Deadline dl(budget);
    CoverSearch search(inst, dl, greedy_cover(inst));
    search.run();
    auto sol = to_point_solution(sub, search.best, "exact");
    sol.budget_exceeded = dl.hit;
    sol.optimal = !dl.hit;
    return sol;
}

namespace {

// Smallest replacement set covering `deficit`, at most `limit` vertices,
// found by depth-first search over candidate vertices in index order. Returns
// the first minimum-size set in that order, which keeps runs reproducible.
struct ReplacementSearch {
    const StabInstance& inst;
    std::vector<int> deficit;                 // target positions, sorted
    std::vector<int> candidates;              // vertices covering >= 1 deficit face
    std::vector<std::vector<int>> cand_of;    // deficit position index -> candidates

    ReplacementSearch(const StabInstance& i, std::vector<int> def) : inst(i), deficit(std::move(def)) {
        std::set<int> cs;
        for (int p : deficit)
            for (int v : inst.cands[p]) cs.insert(v);
        candidates.assign(cs.begin(), cs.end());
        cand_of.resize(deficit.size());
        for (std::size_t d = 0; d < deficit.size(); ++d)
            for (int v : inst.cands[deficit[d]]) cand_of[d].push_back(v);
    }

    bool covers(int v, int p) const {
        const auto& c = inst.cover[v];
        return std::binary_search(c.begin(), c.end(), p);
    }

    bool dfs(std::size_t limit, std::vector<char>& done, std::vector<int>& out) {
        std::size_t first = 0;
        while (first < deficit.size() && done[first]) first++;
        if (first == deficit.size()) return true;
        if (limit == 0) return false;
        for (int v : cand_of[first]) {
            std::vector<std::size_t> marked;
            for (std::size_t d = first; d < deficit.size(); ++d)
                if (!done[d] && covers(v, deficit[d])) {
                    done[d] = 1;
                    marked.push_back(d);
                }
            out.push_back(v);
            if (dfs(limit - 1, done, out)) return true;
            out.pop_back();
            for (std::size_t d : marked) done[d] = 0;
        }
        return false;
    }

    // Finds a cover of the deficit of size <= max_size, minimizing size.
    bool find(std::size_t max_size, std::vector<int>& out) {
        for (std::size_t t = deficit.empty() ? 0 : 1; t <= max_size; ++t) {
            std::vector<char> done(deficit.size(), 0);
            out.clear();
            if (dfs(t, done, out)) return true;
        }
        return deficit.empty();
    }
};

}  // namespace

PointSolution local_search_stab(const Subdivision& sub, const LocalSearchConfig& cfg,
                                const FaceFilter& target) {
    assert(cfg.k >= 1);
    auto inst = make_stab_instance(sub, target);
    const std::size_t nv = inst.cover.size();

    // X starts as the full vertex set.
    std::vector<int> x(nv);
    for (std::size_t v = 0; v < nv; ++v) x[v] = static_cast<int>(v);
    std::vector<int> cover_count(inst.target.size(), 0);
    for (std::size_t v = 0; v < nv; ++v)
        for (int p : inst.cover[v]) cover_count[p]++;

    std::int64_t iterations = 0;
    bool capped = false;

    auto apply_swap = [&](const std::vector<std::size_t>& remove_idx, const std::vector<int>& add) {
        std::vector<int> removed;
        for (auto it = remove_idx.rbegin(); it != remove_idx.rend(); ++it) {
            removed.push_back(x[*it]);
            x.erase(x.begin() + static_cast<std::ptrdiff_t>(*it));
        }
        for (int v : removed)
            for (int p : inst.cover[v]) cover_count[p]--;
        for (int v : add) {
            x.push_back(v);
            for (int p : inst.cover[v]) cover_count[p]++;
        }
        std::sort(x.begin(), x.end());
    };

    bool improved = true;
    while (improved) {
        if (iterations >= cfg.max_iterations) { capped = true; break; }
        improved = false;
        const int k = std::min<std::size_t>(cfg.k, x.size());
        std::vector<std::size_t> pick;
        for (int s = 1; s <= k && !improved; ++s) {
            // Lexicographic scan over size-s subsets of the sorted solution.
            pick.assign(s, 0);
            for (int i = 0; i < s; ++i) pick[i] = i;
            while (true) {
                std::vector<int> deficit;
                for (std::size_t p = 0; p < inst.target.size(); ++p) {
                    int c = cover_count[p];
                    for (std::size_t idx : pick)
                        if (std::binary_search(inst.cover[x[idx]].begin(), inst.cover[x[idx]].end(),
                                               static_cast<int>(p)))
                            c--;
                    if (c == 0) deficit.push_back(static_cast<int>(p));
                }
                std::vector<int> y;
                bool ok;
                if (deficit.empty()) {
                    ok = true;  // plain shrink, Y empty
                } else {
                    ReplacementSearch rs(inst, deficit);
                    ok = rs.find(static_cast<std::size_t>(s) - 1, y);
                }
                if (ok) {
                    apply_swap(pick, y);
                    iterations++;
                    improved = true;
                    break;
                }
                // next subset
                int i = s - 1;
                while (i >= 0 && pick[i] == x.size() - static_cast<std::size_t>(s - i)) i--;
                if (i < 0) break;
                pick[i]++;
                for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }

    auto sol = to_point_solution(sub, x, "local_search:k=" + std::to_string(cfg.k));
    sol.budget_exceeded = capped;
    // With k covering the whole solution the final scan solved the global
    // instance, so the result is a true optimum.
    sol.optimal = !capped && static_cast<std::size_t>(cfg.k) >= x.size();
    return sol;
}

VerifyReport verify_stab(const Subdivision& sub, const std::vector<Point>& points,
                         const FaceFilter& target) {
    std::set<int> seen;
    std::vector<char> covered(sub.face_count(), 0);
    for (const Point& p : points) {
        auto v = sub.vertex_index(p);
        if (!v)
            throw GeometryError(GeometryError::Kind::malformed_solution,
                                "solution point is not a subdivision vertex");
        if (!seen.insert(*v).second)
            throw GeometryError(GeometryError::Kind::malformed_solution, "duplicate solution point");
        // Recompute the stabbed set from the cell grid.
        const auto& xs = sub.xs();
        const auto& ys = sub.ys();
        int gi = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin());
        int gj = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin());
        for (int di = -1; di <= 0; ++di)
            for (int dj = -1; dj <= 0; ++dj) {
                int i = gi + di, j = gj + dj;
                if (i < 0 || j < 0 || i >= sub.cols() || j >= sub.rows()) continue;
                int f = sub.face_at_cell(i, j);
                if (f >= 0) covered[f] = 1;
            }
    }
    VerifyReport rep;
    for (int f : target.resolve(sub))
        if (!covered[f]) rep.unstabbed.push_back(f);
    rep.feasible = rep.unstabbed.empty();
    return rep;
}

}  // namespace subcover
