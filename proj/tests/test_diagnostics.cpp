#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "support/oracles.hpp"
#include "tfch/diagnostics.hpp"
#include "tfch/initial_conditions.hpp"

using namespace tfch;
using std::numbers::pi;

TEST_CASE("free energy of constant fields") {
    const Grid grid{32, 32, 1.0, 1.0};
    CHECK(free_energy(Field(grid, 1.0), 0.1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(free_energy(Field(grid, -1.0), 0.1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(free_energy(Field(grid, 0.0), 0.1) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("free energy of a single mode against 1-D quadrature") {
    const Grid grid{64, 64, 1.0, 1.0};
    const double eps = 0.1;
    Field f(grid);
    for (int j = 0; j < grid.nx; ++j)
        for (int k = 0; k < grid.ny; ++k)
            f.at(j, k) = std::sin(2 * pi * grid.x(j));

    // oracle: E = (eps^2/2) int (2 pi cos)^2 + (1/4) int (sin^2 - 1)^2
    const double grad_part = 0.5 * eps * eps *
                             oracle::simpson([](double x) {
                                 const double c = 2 * pi * std::cos(2 * pi * x);
                                 return c * c;
                             }, 0.0, 1.0, 4096);
    const double bulk_part = 0.25 * oracle::simpson([](double x) {
                                 const double q = std::sin(2 * pi * x);
                                 const double w = q * q - 1.0;
                                 return w * w;
                             }, 0.0, 1.0, 4096);
    CHECK(grad_part == doctest::Approx(0.01 * pi * pi).epsilon(1e-10));
    CHECK(bulk_part == doctest::Approx(3.0 / 32.0).epsilon(1e-10));
    CHECK(free_energy(f, eps) == doctest::Approx(grad_part + bulk_part).epsilon(1e-11));
}

TEST_CASE("free energy properties") {
    const Grid grid{32, 32, 1.0, 1.0};
    const Field f = ic_uniform_random(grid, 0.0, 1.5, 77);

    SUBCASE("non-negative") {
        CHECK(free_energy(f, 0.05) >= 0.0);
        CHECK(free_energy(ic_uniform_random(grid, -2.0, 3.0, 78), 0.01) >= 0.0);
    }
    SUBCASE("invariant under whole-cell shifts") {
        Field shifted(grid);
        const int sj = 5, sk = 11;
        for (int j = 0; j < grid.nx; ++j)
            for (int k = 0; k < grid.ny; ++k)
                shifted.at(j, k) = f.at((j + sj) % grid.nx, (k + sk) % grid.ny);
        const double e0 = free_energy(f, 0.05);
        const double e1 = free_energy(shifted, 0.05);
        CHECK(e1 == doctest::Approx(e0).epsilon(1e-12));
    }
    SUBCASE("gradient part matches the node sum of the spectral gradient") {
        const double eps = 0.07;
        const Field gx = gradient_x(f);
        const Field gy = gradient_y(f);
        const double grad_node_sum =
            0.5 * eps * eps * (l2_inner(gx, gx) + l2_inner(gy, gy));
        double bulk = 0.0;
        for (double v : f.values()) {
            const double q = v * v - 1.0;
            bulk += 0.25 * q * q;
        }
        bulk *= grid.cell_area();
        CHECK(free_energy(f, eps) == doctest::Approx(grad_node_sum + bulk).epsilon(1e-11));
    }
}

TEST_CASE("l2 error") {
    const Grid grid{16, 16, 1.0, 1.0};
    const Field f = ic_uniform_random(grid, 0.0, 1.0, 80);
    CHECK(l2_error(f, f) == 0.0);
    Field g = f;
    for (auto& v : g.values())
        v += 0.3;
    CHECK(l2_error(f, g) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK_THROWS_AS(l2_error(f, Field(Grid{32, 32, 1.0, 1.0})), std::invalid_argument);
}

TEST_CASE("estimate orders") {
    SUBCASE("exact quartering gives order 2") {
        const auto orders = estimate_orders({4e-4, 1e-4}, 2.0);
        REQUIRE(orders.size() == 1);
        CHECK(orders[0] == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("published refinement-table rows") {
        CHECK(estimate_orders({7.096e-6, 1.854e-6}, 2.0)[0] == doctest::Approx(1.94).epsilon(5e-3));
        CHECK(estimate_orders({4.357e-5, 1.094e-5}, 2.0)[0] == doctest::Approx(1.99).epsilon(5e-3));
    }
    SUBCASE("recovers synthetic order p") {
        for (double p : {0.5, 1.0, 1.7, 2.0, 3.25}) {
            std::vector<double> errors;
            for (int j = 0; j < 6; ++j)
                errors.push_back(2.7 * std::pow(std::pow(2.0, -j), p));
            for (double order : estimate_orders(errors, 2.0))
                CHECK(order == doctest::Approx(p).epsilon(1e-10));
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(estimate_orders({1e-3}, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(estimate_orders({1e-3, -1e-4}, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(estimate_orders({1e-3, 1e-4}, 1.0), std::invalid_argument);
    }
}

TEST_CASE("mass drift") {
    const Grid grid{16, 16, 1.0, 1.0};
    const Field f = ic_uniform_random(grid, 0.3, 1.0, 81);
    CHECK(mass_drift(f, f) == 0.0);
    Field g = f;
    for (auto& v : g.values())
        v += 1e-3;
    CHECK(mass_drift(g, f) == doctest::Approx(1e-3).epsilon(1e-10));
}
