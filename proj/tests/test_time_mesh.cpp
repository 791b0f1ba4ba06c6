#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "tfch/kernel_verify.hpp"
#include "tfch/time_mesh.hpp"

using namespace tfch;

TEST_CASE("uniform mesh") {
    const TimeMesh mesh = TimeMesh::uniform(1.0, 4);
    CHECK(mesh.step_count() == 4);
    CHECK(mesh.time(0) == 0.0);
    CHECK(mesh.time(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mesh.time(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mesh.time(4) == 1.0);

    const TimeMesh fine = TimeMesh::uniform(0.01, 10);
    for (int n = 1; n <= 10; ++n)
        CHECK(fine.step(n) == doctest::Approx(1e-3).epsilon(1e-14));

    const TimeMesh single = TimeMesh::uniform(1.0, 1);
    CHECK(single.step_count() == 1);
    CHECK(single.time(1) == 1.0);

    CHECK_THROWS_AS(TimeMesh::uniform(-1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeMesh::uniform(1.0, 0), std::invalid_argument);
}

TEST_CASE("graded mesh") {
    const TimeMesh mesh = TimeMesh::graded(1.0, 4, 2.0);
    CHECK(mesh.time(1) == doctest::Approx(1.0 / 16).epsilon(1e-15));
    CHECK(mesh.time(2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mesh.time(3) == doctest::Approx(9.0 / 16).epsilon(1e-15));
    CHECK(mesh.time(4) == 1.0);

    // r = 1 reduces to the uniform grid
    const TimeMesh linear = TimeMesh::graded(1.0, 7, 1.0);
    const TimeMesh uni = TimeMesh::uniform(1.0, 7);
    for (int k = 0; k <= 7; ++k)
        CHECK(linear.time(k) == doctest::Approx(uni.time(k)).epsilon(1e-15));

    const TimeMesh two = TimeMesh::graded(1.0, 2, 2.0);
    CHECK(two.time(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(two.step_ratio(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(TimeMesh::graded(1.0, 4, 0.5), std::invalid_argument);
}

TEST_CASE("step ratios") {
    const TimeMesh uni = TimeMesh::uniform(1.0, 8);
    for (int n = 1; n < 8; ++n)
        CHECK(uni.step_ratio(n) == doctest::Approx(1.0).epsilon(1e-14));

    TimeMesh mesh;
    mesh.append(0.2);
    mesh.append(0.1);
    CHECK(mesh.step_ratio(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(mesh.step_ratio(2), std::invalid_argument);
    CHECK_THROWS_AS(mesh.step_ratio(0), std::invalid_argument);
}

TEST_CASE("append preserves invariants") {
    TimeMesh mesh;
    CHECK(mesh.step_count() == 0);
    mesh.append(0.1);
    CHECK(mesh.final_time() == doctest::Approx(0.1));
    mesh.append(0.2);
    CHECK(mesh.final_time() == doctest::Approx(0.3));
    CHECK(mesh.step(2) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(mesh.append(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(mesh.append(0.0), std::invalid_argument);
}

TEST_CASE("mesh positivity on random meshes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 30);
        const TimeMesh mesh = verify::random_mesh(rng, n, 0.1, 10.0);
        CHECK(mesh.times().front() == 0.0);
        for (int k = 1; k <= mesh.step_count(); ++k)
            CHECK(mesh.step(k) > 0.0);
    }
}

TEST_CASE("adaptive controller") {
    AdaptiveParams params;
    params.dt_min = 1e-4;
    params.dt_max = 0.1;
    params.beta = 1e7;
    params.warmup_steps = 100;

    SUBCASE("warmup branch returns dt_min") {
        CHECK(next_dt(3.0, 1.0, 0.05, 5, params) == 1e-4);
        CHECK(next_dt(0.0, 0.0, 1e-4, 99, params) == 1e-4);
    }
    SUBCASE("zero slope gives dt_max") {
        CHECK(next_dt(2.5, 2.5, 0.01, 100, params) == doctest::Approx(0.1).epsilon(1e-15));
    }
    SUBCASE("printed formula value") {
        // |dE/dt| = 1e-3: dt = 0.1 / sqrt(1 + 1e7 * 1e-6) = 0.1/sqrt(11)
        const double dt = next_dt(1.0 + 1e-3 * 0.05, 1.0, 0.05, 200, params);
        CHECK(dt == doctest::Approx(0.1 / std::sqrt(11.0)).epsilon(1e-12));
        CHECK(dt == doctest::Approx(0.0301511344577764).epsilon(1e-12));
    }
    SUBCASE("clamped to [dt_min, dt_max]") {
        CHECK(next_dt(1e9, 0.0, 1e-6, 100, params) == 1e-4);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 200; ++i) {
            const double e1 = verify::uniform_sample(rng, -1e8, 1e8);
            const double e0 = verify::uniform_sample(rng, -1e8, 1e8);
            const double dt = next_dt(e1, e0, 1e-3, 150, params);
            CHECK(dt >= params.dt_min);
            CHECK(dt <= params.dt_max);
        }
    }
    SUBCASE("non-increasing in the energy slope") {
        double prev = params.dt_max;
        for (double slope = 0.0; slope < 2.0; slope += 0.05) {
            const double dt = next_dt(slope * 0.01, 0.0, 0.01, 100, params);
            CHECK(dt <= prev + 1e-16);
            prev = dt;
        }
    }
}
