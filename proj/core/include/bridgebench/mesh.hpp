#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bridgebench {

enum class ElementOrder { linear, serendipity };  // Q4 / Q8
enum class EdgeTag { bottom, right, top, left };
enum class Corner { bottom_left, bottom_right, top_right, top_left };

const char* to_string(ElementOrder order);
const char* to_string(EdgeTag tag);
const char* to_string(Corner corner);
ElementOrder element_order_from_string(const std::string& name);
EdgeTag edge_tag_from_string(const std::string& name);
Corner corner_from_string(const std::string& name);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Structured quadrilateral mesh of the rectangle [0,width] x [0,height].
//
// Corner nodes come first, row-major (x fastest), so corner (i,j) is node
// j*(nx+1)+i.  Q8 mid-side nodes follow, ordered by unique edge: all
// horizontal edges row-major, then all vertical edges row-major.  Quad
// connectivity is counter-clockwise, corners first; Q8 appends the four
// mid-side nodes (bottom, right, top, left).
struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<int> quad_nodes;  // flat, nodes_per_quad entries per quad
    int nodes_per_quad = 4;
    std::map<EdgeTag, std::vector<int>> boundary_edges;  // ordered by arc length
    double spacing_hint = 0.0;    // representative element size h [m]

    ElementOrder element_order = ElementOrder::linear;
    int nx = 0;                   // cells along x
    int ny = 0;                   // cells along y
    double width = 0.0;           // [m]
    double height = 0.0;          // [m]

    int quad_count() const { return static_cast<int>(quad_nodes.size()) / nodes_per_quad; }
    int corner_node_count() const { return (nx + 1) * (ny + 1); }
    int corner_node(int i, int j) const { return j * (nx + 1) + i; }
    std::span<const int> quad(int e) const {
        return {quad_nodes.data() + static_cast<std::size_t>(e) * nodes_per_quad,
                static_cast<std::size_t>(nodes_per_quad)};
    }
};

// Uniform nx-by-ny tensor grid.  spacing_hint = width/nx.
// Throws std::invalid_argument on non-positive dimensions or counts.
Mesh build_uniform_grid(double width, double height, int nx, int ny,
                        ElementOrder element_order);

// Tensor grid whose cell sizes form a geometric progression per axis,
// smallest cell adjacent to focus_corner; adjacent cells are in ratio
// grading_ratio, so the extreme cells are in ratio grading_ratio^(n-1).
// grading_ratio = 1 reproduces build_uniform_grid exactly.
// Throws std::invalid_argument if grading_ratio < 1.
Mesh build_graded_grid(double width, double height, int nx, int ny,
                       double grading_ratio, Corner focus_corner,
                       ElementOrder element_order = ElementOrder::linear);

// Stored boundary sequence for one edge; first and last entries are corner
// nodes (shared with the adjacent edges' sequences).
const std::vector<int>& boundary_nodes(const Mesh& mesh, EdgeTag tag);

}  // namespace bridgebench
