#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subcover/geometry.hpp"

namespace subcover {

enum class FaceClass { generic, variable, clause, outer };

// One bounded face of the subdivision: a 4-connected set of compressed-grid
// cells. `is_rectangle` means the cells fill an axis-aligned box and no
// blocked border (a slit) lies strictly inside that box.
struct Face {
    int id = -1;
    std::vector<std::pair<int, int>> cells;  // (col i, row j)
    int i0 = 0, i1 = 0, j0 = 0, j1 = 0;      // cell-index bounding box, inclusive
    bool is_rectangle = false;
    FaceClass face_class = FaceClass::generic;
};

// Planar subdivision induced by a set of axis-parallel segments, built by
// coordinate compression and flood fill. Cells of the compressed grid are
// labeled with the bounded face that owns them (or "unbounded"). Immutable
// after construction; safe to share across threads.
class Subdivision {
public:
    static constexpr int kUnbounded = -1;

    const std::vector<coord_t>& xs() const { return xs_; }
    const std::vector<coord_t>& ys() const { return ys_; }
    int cols() const { return static_cast<int>(xs_.size()) - 1; }
    int rows() const { return static_cast<int>(ys_.size()) - 1; }

    const std::vector<Face>& faces() const { return faces_; }
    int face_count() const { return static_cast<int>(faces_.size()); }

    // Vertices: segment endpoints plus pairwise intersection points on the
    // union. Sorted by (x, y); the index in this list is the vertex id used
    // by the solvers.
    const std::vector<Point>& vertices() const { return vertices_; }
    std::optional<int> vertex_index(Point p) const;

    // Face ids whose closure contains vertex v; at most 4 entries, sorted.
    const std::vector<int>& faces_at_vertex(int v) const { return vertex_faces_[v]; }

    // Sorted neighbor lists of the face adjacency relation (closures share
    // at least one point; irreflexive).
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    bool adjacent(int f, int g) const;

    // Face id owning cell (i, j), or kUnbounded.
    int face_at_cell(int i, int j) const { return cell_face_[idx(i, j)]; }

    // Borders covered by the segment union. blocked_v(i, j) is the border at
    // x = xs[i] alongside cell row j; blocked_h(j, i) at y = ys[j] alongside
    // cell column i.
    bool blocked_v(int i, int j) const { return blocked_v_[static_cast<std::size_t>(i) * rows() + j]; }
    bool blocked_h(int j, int i) const { return blocked_h_[static_cast<std::size_t>(j) * cols() + i]; }

    // Induced planar graph counts; bounded face count equals E - V + C.
    std::size_t graph_vertex_count() const { return vertices_.size(); }
    std::size_t graph_edge_count() const { return edge_count_; }
    std::size_t graph_component_count() const { return component_count_; }

    friend Subdivision build_subdivision(const SegmentSet& s);

    // Class labels are assigned by the reduction compiler after construction.
    void set_face_class(int f, FaceClass c) { faces_[f].face_class = c; }

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * cols() + i; }

    std::vector<coord_t> xs_, ys_;
    std::vector<bool> blocked_v_;   // (cols+1) x rows, index i * rows + j
    std::vector<bool> blocked_h_;   // (rows+1) x cols, index j * cols + i
    std::vector<int> cell_face_;    // rows x cols, row-major
    std::vector<Face> faces_;
    std::vector<Point> vertices_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t component_count_ = 0;
};

// Builds the subdivision. Throws GeometryError(empty_input) when the set has
// no segments. Bounded faces are exactly the bounded connected components of
// the plane minus the segment union.
Subdivision build_subdivision(const SegmentSet& s);

// Ids of faces whose closure contains p. p must be a vertex of the
// subdivision, otherwise GeometryError(not_a_vertex) is thrown.
std::vector<int> stabbed_faces(const Subdivision& sub, Point p);

// All unordered adjacent face pairs (f < g).
std::vector<std::pair<int, int>> face_adjacency(const Subdivision& sub);

// Ids of faces with is_rectangle == true, sorted.
std::vector<int> rectangular_faces(const Subdivision& sub);

// Target-face selector shared by all solvers. The named modes follow the two
// hardness variants; explicit subsets are used for per-gadget searches.
struct FaceFilter {
    enum class Kind { all, rect, subset };
    Kind kind = Kind::all;
    std::vector<int> subset;

    static FaceFilter all() { return {}; }
    static FaceFilter rect() { return {Kind::rect, {}}; }
    static FaceFilter of(std::vector<int> ids) { return {Kind::subset, std::move(ids)}; }

    // Sorted list of target face ids.
    std::vector<int> resolve(const Subdivision& sub) const;
};

}  // namespace subcover
