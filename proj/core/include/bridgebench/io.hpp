#pragma once

#include <iosfwd>
#include <vector>

#include "bridgebench/analytic.hpp"
#include "bridgebench/flux.hpp"
#include "bridgebench/study.hpp"

namespace bridgebench::io {

// Convergence report as CSV with the fixed column schema
//   h_cm,nodes,Q_total_W_per_m,Q_masked_W_per_m,q_marginal_W_per_m2,
//   dQ_rel,dQ_masked_rel,max_temp_dev_C
// Missing difference/deviation entries are empty fields.  Output depends
// only on the report rows, never on timing metadata.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

// JSON mirror of ConvergenceReport (config, rows, verdicts, metadata with
// residuals / wall clock / energy balance / patch diagnostic).
void write_convergence_json(std::ostream& out, const ConvergenceReport& report);

// Inverse of write_convergence_json for round-trip checks; top_flows are not
// serialized and come back empty.
ConvergenceReport read_convergence_json(std::istream& in);

// Per-node top-edge flux profiles, one row per node per level:
//   h_cm,arc_m,q_inward_W_per_m2
void write_profile_csv(std::ostream& out,
                       const std::vector<LevelRow>& rows,
                       const std::vector<BoundaryHeatFlow>& flows);

// Reference table: x_m,y_m,T_C,T_C_rounded (rounded to 0.1 degC).
void write_reference_csv(std::ostream& out,
                         const std::vector<ReferencePoint>& table);
void write_reference_json(std::ostream& out,
                          const std::vector<ReferencePoint>& table);

// Legacy ASCII VTK structured grid with nodal temperature (SCALARS
// temperature_C) and flux vectors (VECTORS heat_flux_W_per_m2) on the
// corner-node lattice.
void write_vtk_field(std::ostream& out, const Mesh& mesh,
                     const TemperatureField& field, const FluxField& flux);

}  // namespace bridgebench::io
