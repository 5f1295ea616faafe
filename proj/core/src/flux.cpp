#include "bridgebench/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "element_basis.hpp"

namespace bridgebench {

namespace {

// Extrapolation weights from the Gauss grid to an element's own nodes: the
// Gauss values are treated as nodal values of a (bi)linear / (bi)quadratic
// Lagrange function on the Gauss lattice, evaluated at the node's local
// coordinates.  Row = local node, column = Gauss point (eta-major).
Eigen::MatrixXd gauss_to_node_matrix(ElementOrder order) {
    const auto pts = detail::gauss_points(order);
    const int n_nodes = detail::node_count(order);
    const int n_1d = static_cast<int>(pts.size());

    // 1D Lagrange basis through the Gauss abscissae, evaluated at t.
    const auto lagrange = [&](int j, double t) {
        double v = 1.0;
        for (int m = 0; m < n_1d; ++m)
            if (m != j) v *= (t - pts[m]) / (pts[j] - pts[m]);
        return v;
    };

    Eigen::MatrixXd E(n_nodes, n_1d * n_1d);
    for (int i = 0; i < n_nodes; ++i) {
        const double xi = detail::kLocalNodes[i][0];
        const double eta = detail::kLocalNodes[i][1];
        for (int gy = 0; gy < n_1d; ++gy)
            for (int gx = 0; gx < n_1d; ++gx)
                E(i, gy * n_1d + gx) = lagrange(gx, xi) * lagrange(gy, eta);
    }
    return E;
}

// Inward-normal unit direction for each edge (into the body).
Vec2 inward_normal(EdgeTag tag) {
    switch (tag) {
        case EdgeTag::bottom: return {0.0, 1.0};
        case EdgeTag::right: return {-1.0, 0.0};
        case EdgeTag::top: return {0.0, -1.0};
        case EdgeTag::left: return {1.0, 0.0};
    }
    return {0.0, 0.0};
}

// Arc-length coordinate of a node along an edge.
double arc_position(const Mesh& mesh, EdgeTag tag, int node) {
    const Vec2 p = mesh.nodes[node];
    return (tag == EdgeTag::top || tag == EdgeTag::bottom) ? p.x : p.y;
}

// Trapezoid weights for possibly non-uniform node positions s (ascending).
std::vector<double> trapezoid_weights(const std::vector<double>& s) {
    const std::size_t n = s.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    w[0] = (s[1] - s[0]) / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (s[i + 1] - s[i - 1]) / 2.0;
    w[n - 1] = (s[n - 1] - s[n - 2]) / 2.0;
    return w;
}

}  // namespace

FluxField recover_gauss_flux(const Mesh& mesh, const TemperatureField& field,
                             const Material& material) {
    if (field.mesh != &mesh || field.values.size() != mesh.nodes.size())
        throw std::invalid_argument(
            "recover_gauss_flux: temperature field does not belong to the mesh");

    const auto pts = detail::gauss_points(mesh.element_order);
    const int n_1d = static_cast<int>(pts.size());
    const int n = mesh.nodes_per_quad;

    FluxField flux;
    flux.mesh = &mesh;
    flux.gauss_per_element = n_1d * n_1d;
    flux.gauss_flux.resize(static_cast<std::size_t>(mesh.quad_count()) *
                           flux.gauss_per_element);

    double dxi[8], deta[8];
    for (int e = 0; e < mesh.quad_count(); ++e) {
        const auto conn = mesh.quad(e);
        for (int gy = 0; gy < n_1d; ++gy) {
            for (int gx = 0; gx < n_1d; ++gx) {
                detail::shape_derivs(mesh.element_order, pts[gx], pts[gy],
                                     dxi, deta);
                double j00 = 0, j01 = 0, j10 = 0, j11 = 0;
                double t_xi = 0, t_eta = 0;
                for (int i = 0; i < n; ++i) {
                    const Vec2 p = mesh.nodes[conn[i]];
                    const double t = field.values[conn[i]];
                    j00 += dxi[i] * p.x;
                    j01 += dxi[i] * p.y;
                    j10 += deta[i] * p.x;
                    j11 += deta[i] * p.y;
                    t_xi += dxi[i] * t;
                    t_eta += deta[i] * t;
                }
                const double det = j00 * j11 - j01 * j10;
                // grad T = J^{-1} (dT/dxi, dT/deta); q = -k grad T
                const double tx = (j11 * t_xi - j01 * t_eta) / det;
                const double ty = (-j10 * t_xi + j00 * t_eta) / det;
                flux.gauss_flux[static_cast<std::size_t>(e) *
                                    flux.gauss_per_element +
                                gy * n_1d + gx] = {-material.k * tx,
                                                   -material.k * ty};
            }
        }
    }
    return flux;
}

FluxField average_to_nodes(FluxField flux) {
    if (flux.mesh == nullptr || flux.gauss_flux.empty())
        throw std::invalid_argument(
            "average_to_nodes: Gauss-point flux has not been recovered");
    const Mesh& mesh = *flux.mesh;
    const Eigen::MatrixXd E = gauss_to_node_matrix(mesh.element_order);
    const int n = mesh.nodes_per_quad;
    const int g = flux.gauss_per_element;

    std::vector<Vec2> sum(mesh.nodes.size(), Vec2{});
    std::vector<int> count(mesh.nodes.size(), 0);
    for (int e = 0; e < mesh.quad_count(); ++e) {
        const auto conn = mesh.quad(e);
        const Vec2* qe = flux.gauss_flux.data() +
                         static_cast<std::size_t>(e) * g;
        for (int i = 0; i < n; ++i) {
            double qx = 0.0, qy = 0.0;
            for (int p = 0; p < g; ++p) {
                qx += E(i, p) * qe[p].x;
                qy += E(i, p) * qe[p].y;
            }
            sum[conn[i]].x += qx;
            sum[conn[i]].y += qy;
            count[conn[i]] += 1;
        }
    }

    flux.nodal_flux.resize(mesh.nodes.size());
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        flux.nodal_flux[i] = {sum[i].x / count[i], sum[i].y / count[i]};
    }
    return flux;
}

namespace {

// Ordered (arc position, inward density) pairs for one edge.
std::vector<std::pair<double, double>> edge_profile(const Mesh& mesh,
                                                    const FluxField& flux,
                                                    EdgeTag tag) {
    if (flux.mesh != &mesh || flux.nodal_flux.size() != mesh.nodes.size())
        throw std::invalid_argument(
            "boundary_heat_flow: nodal flux has not been averaged for this mesh");
    const Vec2 n_in = inward_normal(tag);
    std::vector<std::pair<double, double>> profile;
    for (const int node : boundary_nodes(mesh, tag)) {
        const Vec2 q = flux.nodal_flux[node];
        profile.emplace_back(arc_position(mesh, tag, node),
                             q.x * n_in.x + q.y * n_in.y);
    }
    return profile;
}

}  // namespace

BoundaryHeatFlow boundary_heat_flow(const Mesh& mesh, const FluxField& flux,
                                    EdgeTag tag, int mask_count,
                                    EdgeEnds singular_ends) {
    BoundaryHeatFlow flow;
    flow.per_node = edge_profile(mesh, flux, tag);
    flow.mask_count = mask_count;

    const int n = static_cast<int>(flow.per_node.size());
    if (mask_count < 0 || mask_count > n / 2)
        throw std::invalid_argument(
            "boundary_heat_flow: mask_count must be in [0, node count / 2]");

    std::vector<double> s(flow.per_node.size());
    for (std::size_t i = 0; i < flow.per_node.size(); ++i)
        s[i] = flow.per_node[i].first;
    const std::vector<double> w = trapezoid_weights(s);

    for (int i = 0; i < n; ++i) flow.total += w[i] * flow.per_node[i].second;

    // Masking drops the quadrature contributions of the mask_count nodes
    // nearest each singular end; the remaining weights are unchanged.
    flow.masked_total = flow.total;
    const bool mask_first =
        singular_ends == EdgeEnds::first || singular_ends == EdgeEnds::both;
    const bool mask_last =
        singular_ends == EdgeEnds::last || singular_ends == EdgeEnds::both;
    for (int m = 0; m < mask_count; ++m) {
        if (mask_first) flow.masked_total -= w[m] * flow.per_node[m].second;
        if (mask_last)
            flow.masked_total -= w[n - 1 - m] * flow.per_node[n - 1 - m].second;
    }
    return flow;
}

double boundary_heat_flow_excluding(const Mesh& mesh, const FluxField& flux,
                                    EdgeTag tag, double exclusion) {
    const auto profile = edge_profile(mesh, flux, tag);
    const double cut = profile.back().first - exclusion;
    if (exclusion < 0.0 || cut <= profile.front().first)
        throw std::invalid_argument(
            "boundary_heat_flow_excluding: exclusion outside the edge span");

    // Integrate the piecewise-linear density over [start, cut].
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
        const auto [s0, f0] = profile[i];
        const auto [s1, f1] = profile[i + 1];
        if (s0 >= cut) break;
        if (s1 <= cut) {
            acc += 0.5 * (f0 + f1) * (s1 - s0);
        } else {
            const double f_cut = f0 + (f1 - f0) * (cut - s0) / (s1 - s0);
            acc += 0.5 * (f0 + f_cut) * (cut - s0);
        }
    }
    return acc;
}

}  // namespace bridgebench
