#pragma once

#include <stdexcept>
#include <string>

namespace bridgebench {

// Inverted or degenerate element geometry (non-positive Jacobian at a
// quadrature point).
class element_quality_error : public std::runtime_error {
public:
    explicit element_quality_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Inconsistent boundary/solver/study configuration (e.g. an edge that is
// neither Dirichlet nor adiabatic).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Solver breakdown or unmet residual tolerance; carries the residual that
// was actually achieved (NaN if the factorization itself failed).
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double achieved_residual)
        : std::runtime_error(what), residual(achieved_residual) {}

    double residual;
};

}  // namespace bridgebench
