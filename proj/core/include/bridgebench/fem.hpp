#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "bridgebench/mesh.hpp"

namespace bridgebench {

struct Material {
    double k = 1.0;  // thermal conductivity [W/(m K)], uniform
};

// Per-edge boundary data.  Every edge must be either Dirichlet or adiabatic.
// A node shared by two Dirichlet edges takes the value of the first matching
// tag in corner_rule, which must list every Dirichlet tag exactly once.
//
// dirichlet_field, when set, overrides the per-edge constants: every boundary
// node is prescribed dirichlet_field(position).  Used for patch tests, where
// the boundary data is a linear field rather than per-edge constants.
struct BoundarySpec {
    std::map<EdgeTag, double> dirichlet;          // edge -> temperature [degC]
    std::set<EdgeTag> adiabatic;
    std::vector<EdgeTag> corner_rule;
    std::function<double(Vec2)> dirichlet_field;  // optional
};

// Reduced symmetric system over the free (non-Dirichlet) unknowns;
// Dirichlet columns are eliminated into the right-hand side.
struct LinearSystem {
    Eigen::SparseMatrix<double> matrix;  // SPD, free x free
    Eigen::VectorXd rhs;
    std::vector<int> dof_of_node;        // node -> free index, -1 if fixed
    std::vector<int> node_of_dof;        // free index -> node
    std::map<int, double> fixed_values;  // node -> prescribed temperature
    const Mesh* mesh = nullptr;
};

struct TemperatureField {
    std::vector<double> values;  // per node [degC]
    const Mesh* mesh = nullptr;
    double solve_residual = 0.0;  // relative residual achieved by solve()
};

// Element conduction matrix  K_ij = int k grad(N_i).grad(N_j) dA  by Gauss
// quadrature (2x2 for Q4, 3x3 for Q8).  coords must be the element's nodes
// in counter-clockwise order (4 or 8, matching element_order).
// Throws element_quality_error if det J <= 0 at any quadrature point.
Eigen::MatrixXd element_stiffness(std::span<const Vec2> coords, double k,
                                  ElementOrder element_order);

// Global assembly with symmetric Dirichlet elimination.
// Throws config_error if any edge is neither Dirichlet nor adiabatic, or if
// corner_rule does not cover the Dirichlet tags exactly.
LinearSystem assemble(const Mesh& mesh, const Material& material,
                      const BoundarySpec& bc);

// Sparse SPD direct solve (LDLT).  Verifies a relative residual <= 1e-10 and
// throws numerical_error (carrying the achieved residual) otherwise.
// Output is deterministic for a fixed mesh and configuration.
TemperatureField solve(const LinearSystem& system);

}  // namespace bridgebench
