#include "bridgebench/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace bridgebench::io {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) {
    return v ? num(*v) : std::string();
}

ordered_json to_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> optional_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "h_cm,nodes,Q_total_W_per_m,Q_masked_W_per_m,q_marginal_W_per_m2,"
           "dQ_rel,dQ_masked_rel,max_temp_dev_C\n";
    for (const LevelRow& row : report.rows) {
        out << num(row.h_cm) << ',' << row.nodes << ',' << num(row.Q_total)
            << ',' << num(row.Q_masked) << ',' << num(row.q_marginal) << ','
            << opt_num(row.dQ_rel) << ',' << opt_num(row.dQ_masked_rel) << ','
            << opt_num(row.max_temp_dev) << '\n';
    }
}

void write_convergence_json(std::ostream& out, const ConvergenceReport& report) {
    ordered_json j;

    ordered_json cfg;
    cfg["h_sequence_m"] = report.config.h_sequence;
    cfg["element_order"] = to_string(report.config.element_order);
    cfg["mask_count"] = report.config.mask_count;
    ordered_json rule = ordered_json::array();
    for (EdgeTag tag : report.config.corner_rule) rule.push_back(to_string(tag));
    cfg["corner_rule"] = std::move(rule);
    cfg["flux_tolerance"] = report.config.flux_tolerance;
    cfg["temp_tolerance"] = report.config.temp_tolerance;
    cfg["threads"] = report.config.threads;
    j["config"] = std::move(cfg);

    ordered_json rows = ordered_json::array();
    for (const LevelRow& row : report.rows) {
        ordered_json r;
        r["h_m"] = row.h;
        r["h_cm"] = row.h_cm;
        r["nodes"] = row.nodes;
        r["Q_total_W_per_m"] = row.Q_total;
        r["Q_masked_W_per_m"] = row.Q_masked;
        r["q_marginal_W_per_m2"] = row.q_marginal;
        r["dQ_rel"] = to_json(row.dQ_rel);
        r["dQ_masked_rel"] = to_json(row.dQ_masked_rel);
        r["max_temp_dev_C"] = to_json(row.max_temp_dev);
        r["t_min_C"] = row.t_min;
        r["t_max_C"] = row.t_max;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);

    j["verdicts"] = {
        {"flux_converged_unmasked", report.verdicts.flux_converged_unmasked},
        {"flux_converged_masked", report.verdicts.flux_converged_masked},
        {"temperature_within_tolerance",
         report.verdicts.temperature_within_tolerance},
    };

    ordered_json meta;
    ordered_json residuals = ordered_json::array();
    ordered_json walls = ordered_json::array();
    ordered_json balance = ordered_json::array();
    for (const LevelStats& s : report.level_stats) {
        residuals.push_back(s.solver_residual);
        walls.push_back(s.wall_seconds);
        balance.push_back(s.energy_balance_rel);
    }
    meta["solver_residuals"] = std::move(residuals);
    meta["wall_seconds"] = std::move(walls);
    meta["energy_balance_rel"] = std::move(balance);
    meta["patch_test_max_error"] = report.patch_test_max_error;
    meta["difference_normalization"] = "finer-mesh denominator";
    meta["failure"] = report.failure;
    j["metadata"] = std::move(meta);

    out << j.dump(2) << '\n';
}

ConvergenceReport read_convergence_json(std::istream& in) {
    const ordered_json j = ordered_json::parse(in);
    ConvergenceReport report;

    const ordered_json& cfg = j.at("config");
    report.config.h_sequence = cfg.at("h_sequence_m").get<std::vector<double>>();
    report.config.element_order =
        element_order_from_string(cfg.at("element_order").get<std::string>());
    report.config.mask_count = cfg.at("mask_count").get<int>();
    report.config.corner_rule.clear();
    for (const ordered_json& tag : cfg.at("corner_rule")) {
        report.config.corner_rule.push_back(
            edge_tag_from_string(tag.get<std::string>()));
    }
    report.config.flux_tolerance = cfg.at("flux_tolerance").get<double>();
    report.config.temp_tolerance = cfg.at("temp_tolerance").get<double>();
    report.config.threads = cfg.value("threads", 0);

    for (const ordered_json& r : j.at("rows")) {
        LevelRow row;
        row.h = r.at("h_m").get<double>();
        row.h_cm = r.at("h_cm").get<double>();
        row.nodes = r.at("nodes").get<long>();
        row.Q_total = r.at("Q_total_W_per_m").get<double>();
        row.Q_masked = r.at("Q_masked_W_per_m").get<double>();
        row.q_marginal = r.at("q_marginal_W_per_m2").get<double>();
        row.dQ_rel = optional_from(r.at("dQ_rel"));
        row.dQ_masked_rel = optional_from(r.at("dQ_masked_rel"));
        row.max_temp_dev = optional_from(r.at("max_temp_dev_C"));
        row.t_min = r.value("t_min_C", 0.0);
        row.t_max = r.value("t_max_C", 0.0);
        report.rows.push_back(std::move(row));
    }

    const ordered_json& v = j.at("verdicts");
    report.verdicts.flux_converged_unmasked =
        v.at("flux_converged_unmasked").get<bool>();
    report.verdicts.flux_converged_masked =
        v.at("flux_converged_masked").get<bool>();
    report.verdicts.temperature_within_tolerance =
        v.at("temperature_within_tolerance").get<bool>();

    if (j.contains("metadata")) {
        const ordered_json& meta = j.at("metadata");
        const auto residuals =
            meta.value("solver_residuals", std::vector<double>{});
        const auto walls = meta.value("wall_seconds", std::vector<double>{});
        const auto balance =
            meta.value("energy_balance_rel", std::vector<double>{});
        report.level_stats.resize(report.rows.size());
        for (std::size_t i = 0; i < report.level_stats.size(); ++i) {
            if (i < residuals.size())
                report.level_stats[i].solver_residual = residuals[i];
            if (i < walls.size()) report.level_stats[i].wall_seconds = walls[i];
            if (i < balance.size())
                report.level_stats[i].energy_balance_rel = balance[i];
        }
        report.patch_test_max_error = meta.value("patch_test_max_error", 0.0);
        report.failure = meta.value("failure", std::string());
    }
    return report;
}

void write_profile_csv(std::ostream& out, const std::vector<LevelRow>& rows,
                       const std::vector<BoundaryHeatFlow>& flows) {
    if (rows.size() != flows.size()) {
        throw std::invalid_argument(
            "profile export needs one flow record per report row");
    }
    out << "h_cm,arc_m,q_inward_W_per_m2\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [arc, density] : flows[i].per_node) {
            out << num(rows[i].h_cm) << ',' << num(arc) << ',' << num(density)
                << '\n';
        }
    }
}

void write_reference_csv(std::ostream& out,
                         const std::vector<ReferencePoint>& table) {
    out << "x_m,y_m,T_C,T_C_rounded\n";
    char rounded[16];
    for (const ReferencePoint& p : table) {
        std::snprintf(rounded, sizeof rounded, "%.1f",
                      std::round(p.T * 10.0) / 10.0);
        out << num(p.x) << ',' << num(p.y) << ',' << num(p.T) << ',' << rounded
            << '\n';
    }
}

void write_reference_json(std::ostream& out,
                          const std::vector<ReferencePoint>& table) {
    ordered_json j = ordered_json::array();
    for (const ReferencePoint& p : table) {
        j.push_back({{"x_m", p.x},
                     {"y_m", p.y},
                     {"T_C", p.T},
                     {"T_C_rounded", std::round(p.T * 10.0) / 10.0}});
    }
    out << j.dump(2) << '\n';
}

void write_vtk_field(std::ostream& out, const Mesh& mesh,
                     const TemperatureField& field, const FluxField& flux) {
    if (field.mesh != &mesh || flux.mesh != &mesh) {
        throw std::invalid_argument("field export: data does not belong to mesh");
    }
    if (field.values.size() != mesh.nodes.size() ||
        flux.nodal_flux.size() != mesh.nodes.size()) {
        throw std::invalid_argument(
            "field export needs node-averaged flux for every node");
    }
    const int n = mesh.corner_node_count();
    out << "# vtk DataFile Version 2.0\n"
        << "steady-state temperature and recovered heat flux\n"
        << "ASCII\n"
        << "DATASET STRUCTURED_GRID\n"
        << "DIMENSIONS " << mesh.nx + 1 << ' ' << mesh.ny + 1 << " 1\n"
        << "POINTS " << n << " double\n";
    for (int i = 0; i < n; ++i) {
        out << num(mesh.nodes[i].x) << ' ' << num(mesh.nodes[i].y) << " 0\n";
    }
    out << "POINT_DATA " << n << '\n'
        << "SCALARS temperature_C double 1\n"
        << "LOOKUP_TABLE default\n";
    for (int i = 0; i < n; ++i) {
        out << num(field.values[i]) << '\n';
    }
    out << "VECTORS heat_flux_W_per_m2 double\n";
    for (int i = 0; i < n; ++i) {
        out << num(flux.nodal_flux[i].x) << ' ' << num(flux.nodal_flux[i].y)
            << " 0\n";
    }
}

}  // namespace bridgebench::io
