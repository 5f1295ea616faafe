#pragma once

// Internal shape-function tables shared by the stiffness and flux-recovery
// code.  Local node order matches Mesh connectivity: corners counter-
// clockwise from (-1,-1), then Q8 mid-sides (bottom, right, top, left).

#include <array>
#include <span>

#include "bridgebench/mesh.hpp"

namespace bridgebench::detail {

inline constexpr std::array<std::array<double, 2>, 8> kLocalNodes = {{
    {-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0},
    {0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0},
}};

inline constexpr double kGauss2 = 0.57735026918962576451;   // 1/sqrt(3)
inline constexpr double kGauss3 = 0.77459666924148337704;   // sqrt(3/5)
inline constexpr std::array<double, 2> kGauss2Pts = {-kGauss2, kGauss2};
inline constexpr std::array<double, 2> kGauss2Wts = {1.0, 1.0};
inline constexpr std::array<double, 3> kGauss3Pts = {-kGauss3, 0.0, kGauss3};
inline constexpr std::array<double, 3> kGauss3Wts = {5.0 / 9.0, 8.0 / 9.0,
                                                     5.0 / 9.0};

inline int node_count(ElementOrder order) {
    return order == ElementOrder::linear ? 4 : 8;
}

inline std::span<const double> gauss_points(ElementOrder order) {
    return order == ElementOrder::linear ? std::span<const double>(kGauss2Pts)
                                         : std::span<const double>(kGauss3Pts);
}

inline std::span<const double> gauss_weights(ElementOrder order) {
    return order == ElementOrder::linear ? std::span<const double>(kGauss2Wts)
                                         : std::span<const double>(kGauss3Wts);
}

// Shape-function values at local point (xi, eta); out must hold
// node_count(order) entries.
inline void shape_values(ElementOrder order, double xi, double eta,
                         double* out) {
    if (order == ElementOrder::linear) {
        for (int i = 0; i < 4; ++i) {
            const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
            out[i] = 0.25 * (1.0 + xi * xi_i) * (1.0 + eta * eta_i);
        }
        return;
    }
    for (int i = 0; i < 4; ++i) {
        const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
        out[i] = 0.25 * (1.0 + xi * xi_i) * (1.0 + eta * eta_i) *
                 (xi * xi_i + eta * eta_i - 1.0);
    }
    for (int i = 4; i < 8; ++i) {
        const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
        out[i] = xi_i == 0.0
                     ? 0.5 * (1.0 - xi * xi) * (1.0 + eta * eta_i)
                     : 0.5 * (1.0 + xi * xi_i) * (1.0 - eta * eta);
    }
}

// Local-coordinate derivatives dN/dxi, dN/deta at (xi, eta).
inline void shape_derivs(ElementOrder order, double xi, double eta,
                         double* dxi, double* deta) {
    if (order == ElementOrder::linear) {
        for (int i = 0; i < 4; ++i) {
            const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
            dxi[i] = 0.25 * xi_i * (1.0 + eta * eta_i);
            deta[i] = 0.25 * eta_i * (1.0 + xi * xi_i);
        }
        return;
    }
    for (int i = 0; i < 4; ++i) {
        const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
        dxi[i] = 0.25 * xi_i * (1.0 + eta * eta_i) *
                 (2.0 * xi * xi_i + eta * eta_i);
        deta[i] = 0.25 * eta_i * (1.0 + xi * xi_i) *
                  (xi * xi_i + 2.0 * eta * eta_i);
    }
    for (int i = 4; i < 8; ++i) {
        const double xi_i = kLocalNodes[i][0], eta_i = kLocalNodes[i][1];
        if (xi_i == 0.0) {
            dxi[i] = -xi * (1.0 + eta * eta_i);
            deta[i] = 0.5 * eta_i * (1.0 - xi * xi);
        } else {
            dxi[i] = 0.5 * xi_i * (1.0 - eta * eta);
            deta[i] = -eta * (1.0 + xi * xi_i);
        }
    }
}

}  // namespace bridgebench::detail
