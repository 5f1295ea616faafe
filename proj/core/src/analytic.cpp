#include "bridgebench/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bridgebench {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_cfg(const Case1Exact& cfg) {
    if (cfg.L <= 0.0) throw std::invalid_argument("Case1Exact: L must be positive");
    if (cfg.max_terms < 1)
        throw std::invalid_argument("Case1Exact: max_terms must be >= 1");
    if (cfg.tol <= 0.0) throw std::invalid_argument("Case1Exact: tol must be positive");
}

// sinh(a)/sinh(b) for 0 <= a <= b without evaluating either sinh;
// sinh(m pi) overflows from m = 225 on.
double sinh_ratio(double a, double b) {
    return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
           (1.0 - std::exp(-2.0 * b));
}

}  // namespace

double exact_temperature(const Case1Exact& cfg, double x, double y) {
    validate_cfg(cfg);
    const double W = cfg.L / 2.0;
    // The series solves the full L x L square, so x may run from -W to W;
    // negative x mirrors across the adiabatic plane, which keeps central
    // differences straddling x = 0 well-defined.
    if (x < -W - 1e-12 || x > W + 1e-12 || y < -1e-12 || y > cfg.L + 1e-12)
        throw std::invalid_argument("exact_temperature: point outside the full square");

    // Exact boundary hits first; the hot edge takes precedence at the
    // singular corner, matching the FEM corner rule.
    if (y == cfg.L) return cfg.T_hot;
    if (x == W || x == -W || y == 0.0) return cfg.T_cold;

    const double X = W + x;  // distance from the cold side of the full square
    const double scale = 4.0 * std::abs(cfg.T_hot - cfg.T_cold) / kPi;
    double sum = 0.0;
    for (int m = 1; m <= 2 * cfg.max_terms - 1; m += 2) {
        const double term = std::sin(m * kPi * X / cfg.L) *
                            sinh_ratio(m * kPi * y / cfg.L, m * kPi) / m;
        sum += term;
        // sinh_ratio decays like exp(-m pi (1 - y/L)); once a term's
        // temperature contribution is below the cutoff all later ones are.
        if (std::abs(term) * scale < cfg.tol) break;
    }
    return cfg.T_cold + (cfg.T_hot - cfg.T_cold) * 4.0 / kPi * sum;
}

std::vector<ReferencePoint> reference_grid(const Case1Exact& cfg,
                                           double spacing) {
    validate_cfg(cfg);
    const double W = cfg.L / 2.0;
    if (spacing <= 0.0)
        throw std::invalid_argument("reference_grid: spacing must be positive");
    const double cols = W / spacing;
    const double rows = cfg.L / spacing;
    if (std::abs(cols - std::round(cols)) > 1e-9 ||
        std::abs(rows - std::round(rows)) > 1e-9)
        throw std::invalid_argument(
            "reference_grid: spacing must divide both half-width and height");

    const int nc = static_cast<int>(std::round(cols));
    const int nr = static_cast<int>(std::round(rows));
    std::vector<ReferencePoint> table;
    table.reserve(static_cast<std::size_t>(nc) * (nr - 1));
    for (int j = 1; j < nr; ++j) {        // interior rows 0 < y < L
        for (int i = 0; i < nc; ++i) {    // columns 0 <= x < W
            const double x = W * i / nc;
            const double y = cfg.L * j / nr;
            table.push_back({x, y, exact_temperature(cfg, x, y)});
        }
    }
    return table;
}

double exact_masked_heat_flow(const Case1Exact& cfg, double exclusion) {
    validate_cfg(cfg);
    const double W = cfg.L / 2.0;
    if (!(exclusion > 0.0) || !(exclusion < W))
        throw std::invalid_argument(
            "exact_masked_heat_flow: exclusion must lie in (0, L/2)");

    // Termwise integration of k dT/dy over x in [0, W - exclusion] gives
    //   (4 T_hot k / pi) sum_{m odd} coth(m pi) cos(m pi d / L) / m.
    // Split coth = 1 + (coth - 1): the first part is the classical series
    // sum_{m odd} cos(m a)/m = ln(cot(a/2))/2, the rest converges like
    // exp(-2 pi m).
    const double a = kPi * exclusion / cfg.L;
    double sum = 0.5 * std::log(1.0 / std::tan(a / 2.0));
    for (int m = 1; m <= 2 * cfg.max_terms - 1; m += 2) {
        const double coth_m1 = 2.0 / std::expm1(2.0 * m * kPi);  // coth(m pi) - 1
        const double term = coth_m1 * std::cos(m * a) / m;
        sum += term;
        if (std::abs(coth_m1) < cfg.tol) break;
    }
    return 4.0 * (cfg.T_hot - cfg.T_cold) * cfg.k / kPi * sum;
}

}  // namespace bridgebench
