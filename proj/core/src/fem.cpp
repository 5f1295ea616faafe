#include "bridgebench/fem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bridgebench/errors.hpp"
#include "element_basis.hpp"

namespace bridgebench {

namespace {

// Physical shape-function gradients and Jacobian determinant at one local
// point.  grad is node_count x 2 (rows: nodes; columns: d/dx, d/dy).
double physical_gradients(std::span<const Vec2> coords, ElementOrder order,
                          double xi, double eta,
                          Eigen::Matrix<double, 8, 2>& grad) {
    const int n = detail::node_count(order);
    double dxi[8], deta[8];
    detail::shape_derivs(order, xi, eta, dxi, deta);

    double j00 = 0.0, j01 = 0.0, j10 = 0.0, j11 = 0.0;  // J = d(x,y)/d(xi,eta)
    for (int i = 0; i < n; ++i) {
        j00 += dxi[i] * coords[i].x;
        j01 += dxi[i] * coords[i].y;
        j10 += deta[i] * coords[i].x;
        j11 += deta[i] * coords[i].y;
    }
    const double det = j00 * j11 - j01 * j10;
    if (det <= 0.0)
        throw element_quality_error(
            "non-positive Jacobian determinant at a quadrature point");

    const double inv00 = j11 / det, inv01 = -j01 / det;
    const double inv10 = -j10 / det, inv11 = j00 / det;
    for (int i = 0; i < n; ++i) {
        grad(i, 0) = inv00 * dxi[i] + inv01 * deta[i];
        grad(i, 1) = inv10 * dxi[i] + inv11 * deta[i];
    }
    return det;
}

}  // namespace

Eigen::MatrixXd element_stiffness(std::span<const Vec2> coords, double k,
                                  ElementOrder element_order) {
    const int n = detail::node_count(element_order);
    if (static_cast<int>(coords.size()) != n)
        throw std::invalid_argument(
            "element_stiffness: coordinate count does not match element order");
    if (k <= 0.0)
        throw std::invalid_argument("element_stiffness: conductivity must be positive");

    const auto pts = detail::gauss_points(element_order);
    const auto wts = detail::gauss_weights(element_order);

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    Eigen::Matrix<double, 8, 2> grad;
    for (std::size_t gy = 0; gy < pts.size(); ++gy) {
        for (std::size_t gx = 0; gx < pts.size(); ++gx) {
            const double det =
                physical_gradients(coords, element_order, pts[gx], pts[gy], grad);
            const double w = k * wts[gx] * wts[gy] * det;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    K(i, j) += w * (grad(i, 0) * grad(j, 0) +
                                    grad(i, 1) * grad(j, 1));
        }
    }
    return K;
}

namespace {

// Prescribed node values per the boundary spec (nodal field if present,
// otherwise per-edge constants resolved by corner_rule order).
std::map<int, double> prescribed_values(const Mesh& mesh,
                                        const BoundarySpec& bc) {
    std::map<int, double> fixed;
    if (bc.dirichlet_field) {
        for (const auto& [tag, nodes] : mesh.boundary_edges)
            for (const int n : nodes)
                fixed.emplace(n, bc.dirichlet_field(mesh.nodes[n]));
        return fixed;
    }

    for (const auto& [tag, nodes] : mesh.boundary_edges) {
        const bool is_dirichlet = bc.dirichlet.count(tag) > 0;
        const bool is_adiabatic = bc.adiabatic.count(tag) > 0;
        if (is_dirichlet == is_adiabatic)
            throw config_error(std::string("edge '") + to_string(tag) +
                               "' must be exactly one of Dirichlet or adiabatic");
    }
    for (const auto& [tag, value] : bc.dirichlet) {
        if (std::count(bc.corner_rule.begin(), bc.corner_rule.end(), tag) != 1)
            throw config_error(std::string("corner_rule must list Dirichlet tag '") +
                               to_string(tag) + "' exactly once");
    }

    // corner_rule order decides which value a shared corner node receives:
    // the first pass that touches a node wins.
    for (const EdgeTag tag : bc.corner_rule) {
        const auto it = bc.dirichlet.find(tag);
        if (it == bc.dirichlet.end()) continue;
        for (const int n : boundary_nodes(mesh, tag)) fixed.emplace(n, it->second);
    }
    return fixed;
}

}  // namespace

LinearSystem assemble(const Mesh& mesh, const Material& material,
                      const BoundarySpec& bc) {
    if (material.k <= 0.0)
        throw config_error("material conductivity must be positive");

    LinearSystem sys;
    sys.mesh = &mesh;
    sys.fixed_values = prescribed_values(mesh, bc);

    const int n_nodes = static_cast<int>(mesh.nodes.size());
    sys.dof_of_node.assign(n_nodes, -1);
    for (int n = 0; n < n_nodes; ++n) {
        if (!sys.fixed_values.count(n)) {
            sys.dof_of_node[n] = static_cast<int>(sys.node_of_dof.size());
            sys.node_of_dof.push_back(n);
        }
    }
    const int n_free = static_cast<int>(sys.node_of_dof.size());
    sys.rhs = Eigen::VectorXd::Zero(n_free);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.quad_count()) *
                     mesh.nodes_per_quad * mesh.nodes_per_quad);

    std::vector<Vec2> coords(mesh.nodes_per_quad);
    for (int e = 0; e < mesh.quad_count(); ++e) {
        const auto conn = mesh.quad(e);
        for (int i = 0; i < mesh.nodes_per_quad; ++i)
            coords[i] = mesh.nodes[conn[i]];
        const Eigen::MatrixXd Ke =
            element_stiffness(coords, material.k, mesh.element_order);

        for (int i = 0; i < mesh.nodes_per_quad; ++i) {
            const int dof_i = sys.dof_of_node[conn[i]];
            if (dof_i < 0) continue;
            for (int j = 0; j < mesh.nodes_per_quad; ++j) {
                const int dof_j = sys.dof_of_node[conn[j]];
                if (dof_j >= 0)
                    triplets.emplace_back(dof_i, dof_j, Ke(i, j));
                else
                    sys.rhs[dof_i] -= Ke(i, j) * sys.fixed_values.at(conn[j]);
            }
        }
    }

    sys.matrix.resize(n_free, n_free);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

TemperatureField solve(const LinearSystem& system) {
    if (system.mesh == nullptr)
        throw std::invalid_argument("solve: system carries no mesh");

    TemperatureField field;
    field.mesh = system.mesh;
    field.values.assign(system.mesh->nodes.size(), 0.0);
    for (const auto& [node, value] : system.fixed_values)
        field.values[node] = value;
    if (system.matrix.rows() == 0) return field;  // fully prescribed

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(system.matrix);
    if (ldlt.info() != Eigen::Success)
        throw numerical_error("sparse LDLT factorization failed",
                              std::numeric_limits<double>::quiet_NaN());
    const Eigen::VectorXd x = ldlt.solve(system.rhs);

    const double rhs_norm = system.rhs.norm();
    const double abs_residual = (system.matrix * x - system.rhs).norm();
    const double residual =
        rhs_norm > 0.0 ? abs_residual / rhs_norm : abs_residual;
    if (!(residual <= 1e-10))
        throw numerical_error("solve residual exceeds 1e-10", residual);

    for (int dof = 0; dof < x.size(); ++dof)
        field.values[system.node_of_dof[dof]] = x[dof];
    field.solve_residual = residual;
    return field;
}

}  // namespace bridgebench
