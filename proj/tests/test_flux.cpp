#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bridgebench/fem.hpp"
#include "bridgebench/flux.hpp"
#include "bridgebench/mesh.hpp"

#include "expected_values.hpp"

using namespace bridgebench;

namespace {

BoundarySpec one_dimensional_spec() {
    BoundarySpec bc;
    bc.dirichlet[EdgeTag::top] = 20.0;
    bc.dirichlet[EdgeTag::bottom] = 0.0;
    bc.adiabatic = {EdgeTag::left, EdgeTag::right};
    bc.corner_rule = {EdgeTag::top, EdgeTag::bottom};
    return bc;
}

BoundarySpec case1_spec() {
    BoundarySpec bc;
    bc.dirichlet[EdgeTag::top] = 20.0;
    bc.dirichlet[EdgeTag::right] = 0.0;
    bc.dirichlet[EdgeTag::bottom] = 0.0;
    bc.adiabatic = {EdgeTag::left};
    bc.corner_rule = {EdgeTag::top, EdgeTag::bottom, EdgeTag::right};
    return bc;
}

FluxField solve_and_recover(const Mesh& mesh, const BoundarySpec& bc) {
    const TemperatureField field = solve(assemble(mesh, Material{}, bc));
    FluxField flux = recover_gauss_flux(mesh, field, Material{});
    return average_to_nodes(std::move(flux));
}

}  // namespace

TEST_CASE("1D profile recovers a constant downward flux") {
    for (auto order : {ElementOrder::linear, ElementOrder::serendipity}) {
        const Mesh mesh = build_uniform_grid(0.2, 0.4, 4, 8, order);
        const FluxField flux = solve_and_recover(mesh, one_dimensional_spec());

        const int expected_gauss =
            order == ElementOrder::linear ? 4 : 9;
        REQUIRE(flux.gauss_per_element == expected_gauss);
        REQUIRE(flux.gauss_flux.size() ==
                static_cast<std::size_t>(mesh.quad_count()) * expected_gauss);
        for (const Vec2 q : flux.gauss_flux) {
            CHECK(q.x == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(q.y == doctest::Approx(-50.0).epsilon(1e-9));
        }
        REQUIRE(flux.nodal_flux.size() == mesh.nodes.size());
        for (const Vec2 q : flux.nodal_flux) {
            CHECK(q.x == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(q.y == doctest::Approx(-50.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("edge heat flow: trapezoid totals and node masking") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const FluxField flux = solve_and_recover(mesh, one_dimensional_spec());

    const BoundaryHeatFlow top =
        boundary_heat_flow(mesh, flux, EdgeTag::top, 1, EdgeEnds::both);
    CHECK(top.total == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(top.mask_count == 1);

    REQUIRE(top.per_node.size() == 5);
    for (std::size_t i = 0; i < top.per_node.size(); ++i) {
        CHECK(top.per_node[i].first ==
              doctest::Approx(0.05 * static_cast<double>(i)).epsilon(1e-12));
        CHECK(top.per_node[i].second == doctest::Approx(50.0).epsilon(1e-9));
    }

    // Dropping one node's trapezoid contribution at an end removes
    // (h/2) * density = 0.025 * 50 = 1.25 W/m per end.
    CHECK(top.masked_total == doctest::Approx(7.5).epsilon(1e-9));
    CHECK(boundary_heat_flow(mesh, flux, EdgeTag::top, 1, EdgeEnds::first)
              .masked_total == doctest::Approx(8.75).epsilon(1e-9));
    CHECK(boundary_heat_flow(mesh, flux, EdgeTag::top, 1, EdgeEnds::last)
              .masked_total == doctest::Approx(8.75).epsilon(1e-9));
    CHECK(boundary_heat_flow(mesh, flux, EdgeTag::top, 2, EdgeEnds::both)
              .masked_total == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(boundary_heat_flow(mesh, flux, EdgeTag::top, 2, EdgeEnds::none)
              .masked_total == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(boundary_heat_flow(mesh, flux, EdgeTag::top, 0, EdgeEnds::both)
              .masked_total == doctest::Approx(10.0).epsilon(1e-9));

    // The bottom edge passes the same 10 W/m inward-positive (outward flow
    // is negative density against the (0, 1) inward normal).
    const BoundaryHeatFlow bottom =
        boundary_heat_flow(mesh, flux, EdgeTag::bottom, 0);
    CHECK(bottom.total == doctest::Approx(-10.0).epsilon(1e-9));

    // Mask bound: a 5-node edge admits at most 2 masked nodes per end.
    CHECK_NOTHROW(boundary_heat_flow(mesh, flux, EdgeTag::top, 2));
    CHECK_THROWS_AS(boundary_heat_flow(mesh, flux, EdgeTag::top, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(boundary_heat_flow(mesh, flux, EdgeTag::top, -1),
                    std::invalid_argument);
}

TEST_CASE("fixed-width exclusion integrates the clipped profile") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const FluxField flux = solve_and_recover(mesh, one_dimensional_spec());

    // Constant density 50: excluding the last 0.05 m leaves 0.15 * 50 = 7.5,
    // and a cut inside a segment (0.03 m) interpolates linearly.
    CHECK(boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.05) ==
          doctest::Approx(7.5).epsilon(1e-9));
    CHECK(boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.03) ==
          doctest::Approx(8.5).epsilon(1e-9));
    CHECK(boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.0) ==
          doctest::Approx(10.0).epsilon(1e-9));

    CHECK_THROWS_AS(
        boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, -0.01),
        std::invalid_argument);
    CHECK_THROWS_AS(
        boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.2),
        std::invalid_argument);
    CHECK_THROWS_AS(
        boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.25),
        std::invalid_argument);
}

TEST_CASE("singular corner element: Gauss values and nodal blow-up") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 10, 20, ElementOrder::linear);
    const FluxField flux = solve_and_recover(mesh, case1_spec());

    // Top-right element, row-major numbering.
    const int e = 19 * 10 + 9;
    REQUIRE(flux.gauss_per_element == 4);
    const Vec2* g = flux.gauss_flux.data() + static_cast<std::size_t>(e) * 4;

    // For a bilinear element on a rectangle, q_x varies only with eta and
    // q_y only with xi; Gauss points are eta-major: (lo,lo), (hi,lo),
    // (lo,hi), (hi,hi).
    CHECK(g[0].x == doctest::Approx(expected::kCornerGaussQxEtaLo).epsilon(1e-9));
    CHECK(g[1].x == doctest::Approx(expected::kCornerGaussQxEtaLo).epsilon(1e-9));
    CHECK(g[2].x == doctest::Approx(expected::kCornerGaussQxEtaHi).epsilon(1e-9));
    CHECK(g[3].x == doctest::Approx(expected::kCornerGaussQxEtaHi).epsilon(1e-9));
    CHECK(g[0].y == doctest::Approx(expected::kCornerGaussQyXiLo).epsilon(1e-9));
    CHECK(g[2].y == doctest::Approx(expected::kCornerGaussQyXiLo).epsilon(1e-9));
    CHECK(g[1].y == doctest::Approx(expected::kCornerGaussQyXiHi).epsilon(1e-9));
    CHECK(g[3].y == doctest::Approx(expected::kCornerGaussQyXiHi).epsilon(1e-9));

    // The corner node's one-sided recovered density is exactly k dT / h.
    const BoundaryHeatFlow top =
        boundary_heat_flow(mesh, flux, EdgeTag::top, 1, EdgeEnds::last);
    REQUIRE(top.per_node.size() == 11);
    CHECK(top.per_node.back().first == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(top.per_node.back().second ==
          doctest::Approx(expected::kMarginalQ4[0]).epsilon(1e-9));

    CHECK(top.total ==
          doctest::Approx(expected::kTopFlowQ4[0]).epsilon(1e-9));
    // One masked corner node removes exactly (h/2)(k dT / h) = 10 W/m.
    CHECK(top.total - top.masked_total == doctest::Approx(10.0).epsilon(1e-9));

    CHECK(boundary_heat_flow_excluding(mesh, flux, EdgeTag::top, 0.1) ==
          doctest::Approx(expected::kFlowExcluding01_h2cm).epsilon(1e-6));

    // Mask bound on the 11-node edge.
    CHECK_NOTHROW(boundary_heat_flow(mesh, flux, EdgeTag::top, 5));
    CHECK_THROWS_AS(boundary_heat_flow(mesh, flux, EdgeTag::top, 6),
                    std::invalid_argument);
}

TEST_CASE("the masked decrement is mesh-independent") {
    for (const int nx : {10, 20}) {
        const Mesh mesh =
            build_uniform_grid(0.2, 0.4, nx, 2 * nx, ElementOrder::linear);
        const FluxField flux = solve_and_recover(mesh, case1_spec());
        const BoundaryHeatFlow top =
            boundary_heat_flow(mesh, flux, EdgeTag::top, 1, EdgeEnds::last);
        CHECK(top.total - top.masked_total ==
              doctest::Approx(10.0).epsilon(1e-9));
    }
}

TEST_CASE("flux pipeline rejects mismatched inputs") {
    const Mesh mesh = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const Mesh other = build_uniform_grid(0.2, 0.4, 4, 8, ElementOrder::linear);
    const TemperatureField field =
        solve(assemble(mesh, Material{}, one_dimensional_spec()));

    CHECK_THROWS_AS(recover_gauss_flux(other, field, Material{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(average_to_nodes(FluxField{}), std::invalid_argument);

    // Heat-flow integration needs the nodal average, not just Gauss values.
    const FluxField gauss_only = recover_gauss_flux(mesh, field, Material{});
    CHECK_THROWS_AS(boundary_heat_flow(mesh, gauss_only, EdgeTag::top, 0),
                    std::invalid_argument);

    // And the flux must belong to the mesh it is integrated on.
    const FluxField flux = average_to_nodes(gauss_only);
    CHECK_THROWS_AS(boundary_heat_flow(other, flux, EdgeTag::top, 0),
                    std::invalid_argument);
}
