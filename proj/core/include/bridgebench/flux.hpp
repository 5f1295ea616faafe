#pragma once

#include <utility>
#include <vector>

#include "bridgebench/fem.hpp"
#include "bridgebench/mesh.hpp"

namespace bridgebench {

// Recovered heat flux q = -k grad T.
//
// gauss_flux is element-major; within an element, Gauss points are ordered
// eta-major (eta index outer, xi index inner) over the 2x2 (Q4) or 3x3 (Q8)
// rule.  nodal_flux is the unweighted mean of the adjacent elements'
// extrapolated values at each node.
struct FluxField {
    std::vector<Vec2> gauss_flux;  // [W/m^2]
    int gauss_per_element = 0;
    std::vector<Vec2> nodal_flux;  // [W/m^2], empty until average_to_nodes
    const Mesh* mesh = nullptr;
};

// Which ends of an edge's node sequence sit at a singular corner and are
// therefore subject to masking.  Sequences are ordered by arc length, so
// e.g. the top edge of the Case 1 domain has its singular corner at `last`.
enum class EdgeEnds { none, first, last, both };

struct BoundaryHeatFlow {
    double total = 0.0;         // [W/m], inward-positive
    double masked_total = 0.0;  // [W/m]
    int mask_count = 0;         // nodes excluded at each singular end
    // (arc-length position [m], inward-normal flux density [W/m^2])
    std::vector<std::pair<double, double>> per_node;
};

// Flux at the Gauss points of every element, from the element shape-function
// gradients.  Throws std::invalid_argument if field does not belong to mesh.
FluxField recover_gauss_flux(const Mesh& mesh, const TemperatureField& field,
                             const Material& material);

// Fills nodal_flux: per element, Gauss values are extrapolated to the
// element's nodes (inverse of the Gauss-sampling interpolation — bilinear
// for 2x2, biquadratic for 3x3), then averaged over all elements sharing
// each node (one-sided at the boundary).
FluxField average_to_nodes(FluxField flux);

// Trapezoidal integration of the inward-normal nodal flux density along one
// edge.  masked_total drops the trapezoid contributions of the mask_count
// nodes nearest each end selected by singular_ends; total always keeps every
// node.  Throws std::invalid_argument if mask_count is negative or exceeds
// half the edge's node count.
BoundaryHeatFlow boundary_heat_flow(const Mesh& mesh, const FluxField& flux,
                                    EdgeTag tag, int mask_count,
                                    EdgeEnds singular_ends = EdgeEnds::both);

// Diagnostic companion: heat flow through the edge restricted to arc
// positions in [0, edge_length - exclusion], integrating the piecewise-linear
// nodal density over the clipped interval.  Unlike node masking this removes
// a fixed physical neighbourhood of the far corner, which is the quantity
// with a finite mesh-refinement limit.
double boundary_heat_flow_excluding(const Mesh& mesh, const FluxField& flux,
                                    EdgeTag tag, double exclusion);

}  // namespace bridgebench
