#include "bridgebench/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bridgebench {

const char* to_string(ElementOrder order) {
    return order == ElementOrder::linear ? "linear" : "serendipity";
}

const char* to_string(EdgeTag tag) {
    switch (tag) {
        case EdgeTag::bottom: return "bottom";
        case EdgeTag::right: return "right";
        case EdgeTag::top: return "top";
        case EdgeTag::left: return "left";
    }
    return "?";
}

const char* to_string(Corner corner) {
    switch (corner) {
        case Corner::bottom_left: return "bottom-left";
        case Corner::bottom_right: return "bottom-right";
        case Corner::top_right: return "top-right";
        case Corner::top_left: return "top-left";
    }
    return "?";
}

ElementOrder element_order_from_string(const std::string& name) {
    if (name == "linear" || name == "q4") return ElementOrder::linear;
    if (name == "serendipity" || name == "q8") return ElementOrder::serendipity;
    throw std::invalid_argument("unknown element order '" + name +
                                "' (expected linear or serendipity)");
}

EdgeTag edge_tag_from_string(const std::string& name) {
    if (name == "bottom") return EdgeTag::bottom;
    if (name == "right") return EdgeTag::right;
    if (name == "top") return EdgeTag::top;
    if (name == "left") return EdgeTag::left;
    throw std::invalid_argument("unknown edge tag '" + name + "'");
}

Corner corner_from_string(const std::string& name) {
    if (name == "bottom-left" || name == "bottom_left") return Corner::bottom_left;
    if (name == "bottom-right" || name == "bottom_right") return Corner::bottom_right;
    if (name == "top-right" || name == "top_right") return Corner::top_right;
    if (name == "top-left" || name == "top_left") return Corner::top_left;
    throw std::invalid_argument("unknown corner '" + name + "'");
}

namespace {

// 1D node coordinates for one axis: uniform, or a geometric progression of
// cell sizes shrinking toward the high end (toward_high) / low end.  The
// ratio between adjacent cells is `ratio` >= 1; ratio 1 must reproduce the
// uniform formula bit-for-bit, so it shares the same expression.
std::vector<double> axis_coords(double extent, int n, double ratio,
                                bool toward_high) {
    std::vector<double> coords(static_cast<std::size_t>(n) + 1);
    if (ratio == 1.0) {
        for (int i = 0; i <= n; ++i) coords[i] = extent * i / n;
        return coords;
    }
    // Smallest cell s0 from the geometric sum s0 (r^n - 1)/(r - 1) = extent.
    const double s0 = extent * (ratio - 1.0) / (std::pow(ratio, n) - 1.0);
    coords[0] = 0.0;
    for (int c = 0; c < n; ++c) {
        // Cell index counted from the focus end.
        const int from_focus = toward_high ? n - 1 - c : c;
        coords[c + 1] = coords[c] + s0 * std::pow(ratio, from_focus);
    }
    coords[n] = extent;  // kill cumulative round-off at the far boundary
    return coords;
}

Mesh build_tensor_grid(std::vector<double> xs, std::vector<double> ys,
                       ElementOrder order) {
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;

    Mesh mesh;
    mesh.element_order = order;
    mesh.nodes_per_quad = order == ElementOrder::linear ? 4 : 8;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.width = xs.back();
    mesh.height = ys.back();

    mesh.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.nodes.push_back({xs[i], ys[j]});

    // Q8 mid-side nodes: horizontal edges row-major, then vertical edges
    // row-major, so their indices are reproducible across runs.
    int hmid0 = 0, vmid0 = 0;
    if (order == ElementOrder::serendipity) {
        hmid0 = static_cast<int>(mesh.nodes.size());
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i < nx; ++i)
                mesh.nodes.push_back({(xs[i] + xs[i + 1]) / 2.0, ys[j]});
        vmid0 = static_cast<int>(mesh.nodes.size());
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i <= nx; ++i)
                mesh.nodes.push_back({xs[i], (ys[j] + ys[j + 1]) / 2.0});
    }
    const auto hmid = [&](int i, int j) { return hmid0 + j * nx + i; };
    const auto vmid = [&](int i, int j) { return vmid0 + j * (nx + 1) + i; };

    mesh.quad_nodes.reserve(static_cast<std::size_t>(nx) * ny *
                            mesh.nodes_per_quad);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int c0 = mesh.corner_node(i, j);
            const int c1 = mesh.corner_node(i + 1, j);
            const int c2 = mesh.corner_node(i + 1, j + 1);
            const int c3 = mesh.corner_node(i, j + 1);
            mesh.quad_nodes.insert(mesh.quad_nodes.end(), {c0, c1, c2, c3});
            if (order == ElementOrder::serendipity) {
                mesh.quad_nodes.insert(
                    mesh.quad_nodes.end(),
                    {hmid(i, j), vmid(i + 1, j), hmid(i, j + 1), vmid(i, j)});
            }
        }
    }

    // Boundary sequences ordered by arc length (ascending coordinate),
    // interleaving mid-side nodes for Q8.
    const bool q8 = order == ElementOrder::serendipity;
    auto& bottom = mesh.boundary_edges[EdgeTag::bottom];
    auto& top = mesh.boundary_edges[EdgeTag::top];
    for (int i = 0; i <= nx; ++i) {
        bottom.push_back(mesh.corner_node(i, 0));
        top.push_back(mesh.corner_node(i, ny));
        if (q8 && i < nx) {
            bottom.push_back(hmid(i, 0));
            top.push_back(hmid(i, ny));
        }
    }
    auto& left = mesh.boundary_edges[EdgeTag::left];
    auto& right = mesh.boundary_edges[EdgeTag::right];
    for (int j = 0; j <= ny; ++j) {
        left.push_back(mesh.corner_node(0, j));
        right.push_back(mesh.corner_node(nx, j));
        if (q8 && j < ny) {
            left.push_back(vmid(0, j));
            right.push_back(vmid(nx, j));
        }
    }
    return mesh;
}

void check_extents(double width, double height, int nx, int ny) {
    if (width <= 0.0 || height <= 0.0)
        throw std::invalid_argument("mesh extents must be positive");
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("cell counts must be at least 1");
}

}  // namespace

Mesh build_uniform_grid(double width, double height, int nx, int ny,
                        ElementOrder element_order) {
    check_extents(width, height, nx, ny);
    Mesh mesh = build_tensor_grid(axis_coords(width, nx, 1.0, false),
                                  axis_coords(height, ny, 1.0, false),
                                  element_order);
    mesh.spacing_hint = width / nx;
    return mesh;
}

Mesh build_graded_grid(double width, double height, int nx, int ny,
                       double grading_ratio, Corner focus_corner,
                       ElementOrder element_order) {
    check_extents(width, height, nx, ny);
    if (grading_ratio < 1.0)
        throw std::invalid_argument("grading_ratio must be >= 1");

    const bool focus_right = focus_corner == Corner::bottom_right ||
                             focus_corner == Corner::top_right;
    const bool focus_top = focus_corner == Corner::top_left ||
                           focus_corner == Corner::top_right;
    Mesh mesh = build_tensor_grid(
        axis_coords(width, nx, grading_ratio, focus_right),
        axis_coords(height, ny, grading_ratio, focus_top), element_order);
    // Representative size: the smallest (focus-adjacent) cell.
    const double sx = focus_right
                          ? mesh.nodes[mesh.corner_node(nx, 0)].x -
                                mesh.nodes[mesh.corner_node(nx - 1, 0)].x
                          : mesh.nodes[mesh.corner_node(1, 0)].x;
    mesh.spacing_hint = sx;
    return mesh;
}

const std::vector<int>& boundary_nodes(const Mesh& mesh, EdgeTag tag) {
    const auto it = mesh.boundary_edges.find(tag);
    if (it == mesh.boundary_edges.end())
        throw std::invalid_argument(std::string("mesh has no boundary tag '") +
                                    to_string(tag) + "'");
    return it->second;
}

}  // namespace bridgebench
