#pragma once

#include <vector>

namespace bridgebench {

// Fourier-series solution of the Laplace problem on the full L x L square
// with one hot side (y = L) and three cold sides; the benchmark half-domain
// is x in [0, L/2] measured from the symmetry (adiabatic) plane, so the
// series is evaluated at X = L/2 + x:
//
//   T(X, y) = (4 T_hot / pi) sum_{m odd} sin(m pi X / L) sinh(m pi y / L)
//                                        / (m sinh(m pi))
//
// sinh ratios are evaluated in the overflow-safe form
// exp(a-b) (1 - e^{-2a}) / (1 - e^{-2b}); sinh(m pi) itself would overflow
// near m = 225.
struct Case1Exact {
    double L = 0.4;        // full-square side [m]
    double T_hot = 20.0;   // [degC]
    double T_cold = 0.0;   // [degC]
    double k = 1.0;        // [W/(m K)]
    int max_terms = 10000;
    double tol = 1e-12;    // term-magnitude cutoff [degC]
};

// Series temperature at (x, y): x is measured from the adiabatic plane and
// may run over the full square, [-L/2, L/2] (negative x mirrors across the
// symmetry plane, so central differences straddling x = 0 are well-defined);
// y in [0, L].  Exact boundary hits are returned directly (y = L -> T_hot,
// then |x| = L/2 -> T_cold), mirroring the corner precedence used by the FEM
// boundary spec.  Throws std::invalid_argument outside the closed square.
double exact_temperature(const Case1Exact& cfg, double x, double y);

struct ReferencePoint {
    double x = 0.0;  // [m]
    double y = 0.0;  // [m]
    double T = 0.0;  // [degC], full precision (rounding happens at the
                     // reporting layer)
};

// Temperatures at the interior intersections of a square grid of the given
// spacing: x in {0, spacing, ...} < L/2, y in {spacing, ...} < L, ordered by
// y then x.  The default 0.05 m spacing yields the 28 comparison points.
// Throws std::invalid_argument if spacing does not divide both half-width
// and height.
std::vector<ReferencePoint> reference_grid(const Case1Exact& cfg,
                                           double spacing);

// Exact heat flow entering through the hot edge over x in
// [0, L/2 - exclusion], per metre of depth [W/m].  Termwise integration of
// k dT/dy gives (4 T_hot k / pi) sum_odd coth(m pi) cos(m pi d / L) / m,
// which is summed exactly via sum_odd cos(ma)/m = ln(cot(a/2))/2 plus the
// exponentially convergent remainder sum_odd (coth(m pi)-1) cos(m pi d/L)/m.
// Finite for every exclusion > 0; diverges logarithmically as exclusion -> 0.
// Throws std::invalid_argument unless 0 < exclusion < L/2.
double exact_masked_heat_flow(const Case1Exact& cfg, double exclusion);

}  // namespace bridgebench
