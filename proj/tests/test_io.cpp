#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bridgebench/analytic.hpp"
#include "bridgebench/io.hpp"
#include "bridgebench/study.hpp"

#include "expected_values.hpp"

using namespace bridgebench;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

ConvergenceReport two_level_report() {
    StudyConfig config;
    config.h_sequence = {0.02, 0.01};
    return run_case1(config);
}

std::string to_csv(const ConvergenceReport& report) {
    std::ostringstream out;
    io::write_convergence_csv(out, report);
    return out.str();
}

std::string to_json_text(const ConvergenceReport& report) {
    std::ostringstream out;
    io::write_convergence_json(out, report);
    return out.str();
}

}  // namespace

TEST_CASE("convergence CSV schema and empty optional fields") {
    ConvergenceReport report;
    LevelRow row;
    row.h = 0.02;
    row.h_cm = 2.0;
    row.nodes = 231;
    row.Q_total = 44.5;
    row.Q_masked = 34.5;
    row.q_marginal = 1000.0;
    report.rows.push_back(row);

    row.h = 0.01;
    row.h_cm = 1.0;
    row.nodes = 861;
    row.Q_total = 52.25;
    row.Q_masked = 42.25;
    row.q_marginal = 2000.0;
    row.dQ_rel = 0.125;
    row.dQ_masked_rel = 0.25;
    row.max_temp_dev = 0.0625;
    report.rows.push_back(row);

    const auto lines = split_lines(to_csv(report));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "h_cm,nodes,Q_total_W_per_m,Q_masked_W_per_m,q_marginal_W_per_m2,"
          "dQ_rel,dQ_masked_rel,max_temp_dev_C");
    CHECK(lines[1] == "2,231,44.5,34.5,1000,,,");
    CHECK(lines[2] == "1,861,52.25,42.25,2000,0.125,0.25,0.0625");
}

TEST_CASE("convergence JSON round-trips the full report") {
    const ConvergenceReport report = two_level_report();
    const std::string text = to_json_text(report);

    std::istringstream in(text);
    const ConvergenceReport back = io::read_convergence_json(in);

    CHECK(back.config.h_sequence == report.config.h_sequence);
    CHECK(back.config.element_order == report.config.element_order);
    CHECK(back.config.mask_count == report.config.mask_count);
    CHECK(back.config.corner_rule == report.config.corner_rule);
    CHECK(back.config.flux_tolerance == report.config.flux_tolerance);
    CHECK(back.config.temp_tolerance == report.config.temp_tolerance);
    CHECK(back.config.threads == report.config.threads);

    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const LevelRow& a = report.rows[i];
        const LevelRow& b = back.rows[i];
        CHECK(b.h == a.h);
        CHECK(b.h_cm == a.h_cm);
        CHECK(b.nodes == a.nodes);
        CHECK(b.Q_total == a.Q_total);
        CHECK(b.Q_masked == a.Q_masked);
        CHECK(b.q_marginal == a.q_marginal);
        CHECK(b.dQ_rel == a.dQ_rel);
        CHECK(b.dQ_masked_rel == a.dQ_masked_rel);
        CHECK(b.max_temp_dev == a.max_temp_dev);
        CHECK(b.t_min == a.t_min);
        CHECK(b.t_max == a.t_max);
    }

    CHECK(back.verdicts.flux_converged_unmasked ==
          report.verdicts.flux_converged_unmasked);
    CHECK(back.verdicts.flux_converged_masked ==
          report.verdicts.flux_converged_masked);
    CHECK(back.verdicts.temperature_within_tolerance ==
          report.verdicts.temperature_within_tolerance);

    REQUIRE(back.level_stats.size() == report.level_stats.size());
    for (std::size_t i = 0; i < report.level_stats.size(); ++i) {
        CHECK(back.level_stats[i].solver_residual ==
              report.level_stats[i].solver_residual);
        CHECK(back.level_stats[i].wall_seconds ==
              report.level_stats[i].wall_seconds);
        CHECK(back.level_stats[i].energy_balance_rel ==
              report.level_stats[i].energy_balance_rel);
    }
    CHECK(back.patch_test_max_error == report.patch_test_max_error);
    CHECK(back.failure == report.failure);
    CHECK(back.top_flows.empty());  // profiles are not serialized

    // Serialization itself is deterministic.
    CHECK(to_json_text(report) == text);
    CHECK(to_csv(report) == to_csv(report));
}

TEST_CASE("reader tolerates missing metadata and optional config keys") {
    const std::string minimal = R"({
      "config": {
        "h_sequence_m": [0.02],
        "element_order": "serendipity",
        "mask_count": 0,
        "corner_rule": ["top", "bottom", "right"],
        "flux_tolerance": 0.01,
        "temp_tolerance": 0.1
      },
      "rows": [{
        "h_m": 0.02, "h_cm": 2.0, "nodes": 661,
        "Q_total_W_per_m": 65.0, "Q_masked_W_per_m": 65.0,
        "q_marginal_W_per_m2": 3000.0,
        "dQ_rel": null, "dQ_masked_rel": null, "max_temp_dev_C": null
      }],
      "verdicts": {
        "flux_converged_unmasked": false,
        "flux_converged_masked": false,
        "temperature_within_tolerance": true
      }
    })";
    std::istringstream in(minimal);
    const ConvergenceReport report = io::read_convergence_json(in);
    CHECK(report.config.element_order == ElementOrder::serendipity);
    CHECK(report.config.threads == 0);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].nodes == 661);
    CHECK(!report.rows[0].dQ_rel.has_value());
    CHECK(report.rows[0].t_min == 0.0);
    CHECK(report.level_stats.empty());
    CHECK(report.failure.empty());

    std::istringstream broken("{\"rows\": []}");
    CHECK_THROWS(io::read_convergence_json(broken));
}

TEST_CASE("top-edge profile CSV") {
    const ConvergenceReport report = two_level_report();
    REQUIRE(report.top_flows.size() == 2);

    std::ostringstream out;
    io::write_profile_csv(out, report.rows, report.top_flows);
    const auto lines = split_lines(out.str());

    const std::size_t node_rows = report.top_flows[0].per_node.size() +
                                  report.top_flows[1].per_node.size();
    REQUIRE(lines.size() == 1 + node_rows);
    CHECK(lines[0] == "h_cm,arc_m,q_inward_W_per_m2");
    CHECK(lines[1].rfind("2,0,", 0) == 0);  // first node of the 2 cm level

    std::ostringstream ignored;
    CHECK_THROWS_AS(
        io::write_profile_csv(ignored, report.rows, {report.top_flows[0]}),
        std::invalid_argument);
}

TEST_CASE("reference table exports") {
    const Case1Exact cfg;
    const auto table = reference_grid(cfg, 0.05);

    std::ostringstream out;
    io::write_reference_csv(out, table);
    const auto lines = split_lines(out.str());
    REQUIRE(lines.size() == 29);
    CHECK(lines[0] == "x_m,y_m,T_C,T_C_rounded");
    CHECK(lines[1] == "0,0.05,0.886314160355,0.9");
    // The full-square centre row: exactly a quarter of the hot edge.
    bool found_center = false;
    for (const auto& line : lines) {
        if (line == "0,0.2,5,5.0") found_center = true;
    }
    CHECK(found_center);

    std::ostringstream jout;
    io::write_reference_json(jout, table);
    const std::string jtext = jout.str();
    CHECK(jtext.find("\"x_m\"") != std::string::npos);
    CHECK(jtext.find("\"T_C_rounded\"") != std::string::npos);
    // 28 entries, one object per point.
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = jtext.find("\"T_C\"", pos)) !=
                              std::string::npos;
         ++count, ++pos) {
    }
    CHECK(count == 28);
}

TEST_CASE("VTK structured-grid field export") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 10, 20, ElementOrder::linear);
    const TemperatureField field =
        solve(assemble(mesh, Material{}, case1_boundary_spec()));
    const FluxField flux =
        average_to_nodes(recover_gauss_flux(mesh, field, Material{}));

    std::ostringstream out;
    io::write_vtk_field(out, mesh, field, flux);
    const auto lines = split_lines(out.str());

    REQUIRE(lines.size() == 703);
    CHECK(lines[0] == "# vtk DataFile Version 2.0");
    CHECK(lines[2] == "ASCII");
    CHECK(lines[3] == "DATASET STRUCTURED_GRID");
    CHECK(lines[4] == "DIMENSIONS 11 21 1");
    CHECK(lines[5] == "POINTS 231 double");
    CHECK(lines[6] == "0 0 0");
    CHECK(lines[237] == "POINT_DATA 231");
    CHECK(lines[238] == "SCALARS temperature_C double 1");
    CHECK(lines[239] == "LOOKUP_TABLE default");
    CHECK(lines[471] == "VECTORS heat_flux_W_per_m2 double");

    // Temperature block respects the Dirichlet extremes.
    for (std::size_t i = 240; i < 471; ++i) {
        const double v = std::strtod(lines[i].c_str(), nullptr);
        CHECK(v >= -1e-9);
        CHECK(v <= 20.0 + 1e-9);
    }
    // The last vector line is the singular corner: the recovered density
    // there is k dT / h = 1000 W/m^2 into the body (q_y = -1000).
    {
        const std::string& corner = lines.back();
        std::istringstream vec(corner);
        double qx = 0.0, qy = 0.0, qz = 0.0;
        vec >> qx >> qy >> qz;
        CHECK(qy == doctest::Approx(-1000.0).epsilon(1e-9));
        CHECK(qz == 0.0);
    }
}

TEST_CASE("VTK export input validation") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const Mesh other = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const TemperatureField field =
        solve(assemble(mesh, Material{}, case1_boundary_spec()));
    const FluxField gauss_only = recover_gauss_flux(mesh, field, Material{});
    const FluxField flux = average_to_nodes(gauss_only);

    std::ostringstream out;
    CHECK_THROWS_AS(io::write_vtk_field(out, mesh, field, gauss_only),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::write_vtk_field(out, other, field, flux),
                    std::invalid_argument);
}
