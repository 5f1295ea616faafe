#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bridgebench/analytic.hpp"
#include "bridgebench/fem.hpp"
#include "bridgebench/flux.hpp"
#include "bridgebench/mesh.hpp"

namespace bridgebench {

// Refinement-study configuration.  Each h must divide both 0.2 m and 0.4 m
// into integer cell counts and the sequence must be strictly decreasing.
struct StudyConfig {
    std::vector<double> h_sequence = default_h_sequence();  // [m]
    ElementOrder element_order = ElementOrder::linear;
    int mask_count = 1;
    std::vector<EdgeTag> corner_rule = {EdgeTag::top, EdgeTag::bottom,
                                        EdgeTag::right};
    double flux_tolerance = 0.01;   // fraction
    double temp_tolerance = 0.1;    // [degC]
    int threads = 0;  // concurrent levels; 0 = BRIDGEBENCH_THREADS or 1

    static std::vector<double> default_h_sequence();   // 2 .. 0.125 cm
    static std::vector<double> extended_h_sequence();  // 2 .. 0.03125 cm
};

struct LevelRow {
    double h = 0.0;          // [m]
    double h_cm = 0.0;
    long nodes = 0;
    double Q_total = 0.0;    // unmasked top-edge heat flow [W/m]
    double Q_masked = 0.0;   // with config.mask_count marginal nodes dropped
    double q_marginal = 0.0; // inward flux density at the singular corner
                             // node [W/m^2]
    std::optional<double> dQ_rel;         // |Q_i - Q_{i-1}| / Q_i
    std::optional<double> dQ_masked_rel;
    // max |T_FEM - T_exact| over the 0.05 m reference points that coincide
    // with a mesh node (all 28 for h <= 1 cm; 6 for h = 2 cm); empty only if
    // no reference point lies on the node lattice.
    std::optional<double> max_temp_dev;
    double t_min = 0.0;  // nodal extremes, for the maximum-principle check
    double t_max = 0.0;
};

struct Verdicts {
    bool flux_converged_unmasked = false;  // final dQ_rel <= flux_tolerance
    bool flux_converged_masked = false;    // final dQ_masked_rel <= tolerance
    bool temperature_within_tolerance = false;
};

struct LevelStats {
    double solver_residual = 0.0;
    double wall_seconds = 0.0;
    // (inflow - outflow) / inflow of the recovered-flux boundary integrals;
    // reported only — the corner singularity keeps it O(10%).
    double energy_balance_rel = 0.0;
};

struct ConvergenceReport {
    StudyConfig config;
    std::vector<LevelRow> rows;           // ordered by h, coarse to fine
    Verdicts verdicts;
    std::vector<LevelStats> level_stats;  // parallel to rows
    double patch_test_max_error = 0.0;    // diagnostic, run once per study
    std::string failure;                  // empty if all levels completed
    // Top-edge profiles per level, for --profile plots (not serialized).
    std::vector<BoundaryHeatFlow> top_flows;
};

// The ISO 10211 Case 1 boundary conditions on the half domain: top 20 degC,
// right and bottom 0 degC, left (symmetry plane) adiabatic.
BoundarySpec case1_boundary_spec(
    const std::vector<EdgeTag>& corner_rule = {EdgeTag::top, EdgeTag::bottom,
                                               EdgeTag::right});

// Relative change |fine - coarse| / fine between two subdivisions (the finer
// value is the better estimate and normalizes the difference).
// Throws std::domain_error if fine_Q == 0.
double compare_subdivisions(double coarse_Q, double fine_Q);

// Full refinement study: per level, build mesh / assemble / solve / recover
// flux / integrate the top-edge heat flow (mask 0 and config.mask_count) and
// compare nodal temperatures against the series oracle at the coincident
// reference points.  A level's solve failure yields a partial report (rows
// completed before the failed level) with `failure` set.  Levels may run
// concurrently (config.threads / BRIDGEBENCH_THREADS); the report content is
// independent of the parallelism.
ConvergenceReport run_case1(const StudyConfig& config);

// run_case1 with element_order forced to serendipity (Q8).
ConvergenceReport serendipity_study(StudyConfig config);

}  // namespace bridgebench
