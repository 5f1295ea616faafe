#include "bridgebench/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "bridgebench/errors.hpp"

namespace bridgebench {
namespace {

constexpr double kWidth = 0.2;    // [m]
constexpr double kHeight = 0.4;   // [m]
constexpr double kRefSpacing = 0.05;
constexpr double kCoincidenceTol = 1e-9;  // [m]

int cells_along(double extent, double h) {
    const long n = std::lround(extent / h);
    if (n < 1 || std::abs(static_cast<double>(n) * h - extent) > kCoincidenceTol) {
        throw std::invalid_argument("element size " + std::to_string(h) +
                                    " m does not divide the " +
                                    std::to_string(extent) + " m extent");
    }
    return static_cast<int>(n);
}

int top_edge_node_count(double h, ElementOrder order) {
    const int nx = cells_along(kWidth, h);
    return order == ElementOrder::serendipity ? 2 * nx + 1 : nx + 1;
}

void validate(const StudyConfig& config) {
    if (config.h_sequence.empty()) {
        throw std::invalid_argument("h_sequence must not be empty");
    }
    for (std::size_t i = 0; i < config.h_sequence.size(); ++i) {
        const double h = config.h_sequence[i];
        if (!(h > 0.0)) {
            throw std::invalid_argument("element sizes must be positive");
        }
        if (i > 0 && !(h < config.h_sequence[i - 1])) {
            throw std::invalid_argument("h_sequence must be strictly decreasing");
        }
        cells_along(kWidth, h);
        cells_along(kHeight, h);
        if (config.mask_count > top_edge_node_count(h, config.element_order) / 2) {
            throw std::invalid_argument(
                "mask_count exceeds half the top-edge node count at h = " +
                std::to_string(h) + " m");
        }
    }
    if (config.mask_count < 0) {
        throw std::invalid_argument("mask_count must be non-negative");
    }
    if (!(config.flux_tolerance > 0.0) || !(config.temp_tolerance > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (config.threads < 0) {
        throw std::invalid_argument("threads must be non-negative");
    }
}

int resolve_thread_count(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("BRIDGEBENCH_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 512) {
            return static_cast<int>(v);
        }
    }
    return 1;
}

// Exact solution 1 + 2x + 3y - 0.75xy is harmonic and lies in both the Q4
// and Q8 spaces on axis-aligned quads, so the solver must reproduce it at
// the nodes up to the linear-solve tolerance — on a graded mesh too.
double patch_test_error(ElementOrder order) {
    const Mesh mesh =
        build_graded_grid(kWidth, kHeight, 4, 4, 2.0, Corner::top_right, order);
    BoundarySpec bc;
    const auto field_fn = [](Vec2 p) {
        return 1.0 + 2.0 * p.x + 3.0 * p.y - 0.75 * p.x * p.y;
    };
    bc.dirichlet_field = field_fn;
    const TemperatureField field = solve(assemble(mesh, Material{}, bc));
    double err = 0.0;
    for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
        err = std::max(err, std::abs(field.values[n] - field_fn(mesh.nodes[n])));
    }
    return err;
}

// Max |T_FEM - T_exact| over the reference points whose (x, y) coincide with
// a corner node of this uniform mesh; no interpolation.
std::optional<double> temperature_deviation(
    const Mesh& mesh, const TemperatureField& field,
    const std::vector<ReferencePoint>& reference) {
    const double hx = mesh.width / mesh.nx;
    const double hy = mesh.height / mesh.ny;
    std::optional<double> dev;
    for (const ReferencePoint& p : reference) {
        const long i = std::lround(p.x / hx);
        const long j = std::lround(p.y / hy);
        if (i < 0 || i > mesh.nx || j < 0 || j > mesh.ny) continue;
        const int node = mesh.corner_node(static_cast<int>(i), static_cast<int>(j));
        if (std::abs(mesh.nodes[node].x - p.x) > kCoincidenceTol ||
            std::abs(mesh.nodes[node].y - p.y) > kCoincidenceTol) {
            continue;
        }
        const double d = std::abs(field.values[node] - p.T);
        dev = std::max(dev.value_or(0.0), d);
    }
    return dev;
}

struct LevelOutcome {
    LevelRow row;
    LevelStats stats;
    BoundaryHeatFlow top_flow;
    std::string solve_failure;        // non-empty: numerical failure at this level
    std::exception_ptr other_error;   // anything else: rethrown by the caller
};

LevelOutcome run_level(const StudyConfig& config, double h,
                       const BoundarySpec& bc,
                       const std::vector<ReferencePoint>& reference) {
    LevelOutcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const int nx = cells_along(kWidth, h);
        const int ny = cells_along(kHeight, h);
        const Mesh mesh =
            build_uniform_grid(kWidth, kHeight, nx, ny, config.element_order);
        const Material material;
        const TemperatureField field = solve(assemble(mesh, material, bc));
        const FluxField flux =
            average_to_nodes(recover_gauss_flux(mesh, field, material));

        // The singular corner (0.2, 0.4) is the far end of the top edge's
        // arc-ordered node sequence.
        out.top_flow = boundary_heat_flow(mesh, flux, EdgeTag::top,
                                          config.mask_count, EdgeEnds::last);
        const double bottom_in =
            boundary_heat_flow(mesh, flux, EdgeTag::bottom, 0).total;
        const double right_in =
            boundary_heat_flow(mesh, flux, EdgeTag::right, 0).total;

        LevelRow& row = out.row;
        row.h = h;
        row.h_cm = h * 100.0;
        row.nodes = static_cast<long>(mesh.nodes.size());
        row.Q_total = out.top_flow.total;
        row.Q_masked = out.top_flow.masked_total;
        row.q_marginal = out.top_flow.per_node.back().second;
        row.max_temp_dev = temperature_deviation(mesh, field, reference);
        const auto [lo, hi] =
            std::minmax_element(field.values.begin(), field.values.end());
        row.t_min = *lo;
        row.t_max = *hi;

        out.stats.solver_residual = field.solve_residual;
        // All three integrals are inward-positive, so their sum is the net
        // imbalance of the recovered flux field.
        out.stats.energy_balance_rel =
            (out.top_flow.total + bottom_in + right_in) / out.top_flow.total;
    } catch (const numerical_error& e) {
        out.solve_failure = e.what();
    } catch (...) {
        out.other_error = std::current_exception();
    }
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

}  // namespace

std::vector<double> StudyConfig::default_h_sequence() {
    return {0.02, 0.01, 0.005, 0.0025, 0.00125};
}

std::vector<double> StudyConfig::extended_h_sequence() {
    return {0.02, 0.01, 0.005, 0.0025, 0.00125, 0.000625, 0.0003125};
}

BoundarySpec case1_boundary_spec(const std::vector<EdgeTag>& corner_rule) {
    BoundarySpec bc;
    bc.dirichlet[EdgeTag::top] = 20.0;
    bc.dirichlet[EdgeTag::right] = 0.0;
    bc.dirichlet[EdgeTag::bottom] = 0.0;
    bc.adiabatic = {EdgeTag::left};
    bc.corner_rule = corner_rule;
    return bc;
}

double compare_subdivisions(double coarse_Q, double fine_Q) {
    if (fine_Q == 0.0) {
        throw std::domain_error(
            "relative subdivision difference undefined for a zero fine-mesh flow");
    }
    return std::abs(fine_Q - coarse_Q) / std::abs(fine_Q);
}

ConvergenceReport run_case1(const StudyConfig& config) {
    validate(config);

    ConvergenceReport report;
    report.config = config;
    report.patch_test_max_error = patch_test_error(config.element_order);

    const BoundarySpec bc = case1_boundary_spec(config.corner_rule);
    const std::vector<ReferencePoint> reference =
        reference_grid(Case1Exact{}, kRefSpacing);

    const int level_count = static_cast<int>(config.h_sequence.size());
    std::vector<LevelOutcome> outcomes(level_count);
    const int workers =
        std::min(resolve_thread_count(config.threads), level_count);
    if (workers <= 1) {
        for (int i = 0; i < level_count; ++i) {
            outcomes[i] = run_level(config, config.h_sequence[i], bc, reference);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < level_count;
                     i = next.fetch_add(1)) {
                    outcomes[i] =
                        run_level(config, config.h_sequence[i], bc, reference);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (int i = 0; i < level_count; ++i) {
        LevelOutcome& out = outcomes[i];
        if (out.other_error) std::rethrow_exception(out.other_error);
        if (!out.solve_failure.empty()) {
            report.failure = "level h = " + std::to_string(config.h_sequence[i]) +
                             " m: " + out.solve_failure;
            break;
        }
        report.rows.push_back(std::move(out.row));
        report.level_stats.push_back(out.stats);
        report.top_flows.push_back(std::move(out.top_flow));
    }

    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        report.rows[i].dQ_rel = compare_subdivisions(report.rows[i - 1].Q_total,
                                                     report.rows[i].Q_total);
        report.rows[i].dQ_masked_rel = compare_subdivisions(
            report.rows[i - 1].Q_masked, report.rows[i].Q_masked);
    }

    if (!report.rows.empty()) {
        const LevelRow& last = report.rows.back();
        report.verdicts.flux_converged_unmasked =
            last.dQ_rel.has_value() && *last.dQ_rel <= config.flux_tolerance;
        report.verdicts.flux_converged_masked =
            last.dQ_masked_rel.has_value() &&
            *last.dQ_masked_rel <= config.flux_tolerance;
        report.verdicts.temperature_within_tolerance =
            last.max_temp_dev.has_value() &&
            *last.max_temp_dev <= config.temp_tolerance;
    }
    return report;
}

ConvergenceReport serendipity_study(StudyConfig config) {
    config.element_order = ElementOrder::serendipity;
    return run_case1(config);
}

}  // namespace bridgebench
