#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpdi/inclusion.hpp"
#include "gpdi/systems.hpp"

using namespace gpdi;

namespace {

CompactSet as_set(const VertexSample& v) { return CompactSet::from_points(v.vertices); }

}  // namespace

TEST_CASE("averaging a moving disk leaves the centered disk") {
    // X(phi, x) = {(cos phi, sin phi)} + r*B: the phase average of the center
    // is zero, so the averaged support is r in every direction.
    System s = make_system({.name = "circle_disk", .params = {{"r", 0.25}, {"vertices", 256}}});
    auto grid = DirectionGrid::make(2);
    const int n_phi = 256;
    CompactSet cloud = as_set(average(s.field, {0.0, 0.0}, n_phi, grid));
    for (const Vec& d : grid.dirs) {
        const double h = support(cloud, d);
        CHECK(std::abs(h - 0.25) <= kTwoPi / n_phi);
    }
}

TEST_CASE("averaging the interval [0, 1+cos phi]") {
    SetValuedField f;
    f.dim = 1;
    f.eval = [](double phi, const Vec&) {
        return VertexSample{{{0.0}, {1.0 + std::cos(phi)}}, true};
    };
    auto grid = DirectionGrid::make(1);
    CompactSet cloud = as_set(average(f, {0.0}, 256, grid));
    CHECK(support(cloud, {1.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(support(cloud, {-1.0}) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("averaging a phase-independent field is the identity") {
    System s = make_system({.name = "linear_contracting"});
    auto grid = DirectionGrid::make(1);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        Vec x = {rng.uniform(-2.0, 2.0)};
        CompactSet direct = as_set(s.field(0.0, x));
        CompactSet averaged = as_set(average(s.field, x, 64, grid));
        CHECK(hausdorff(direct, averaged) <= 1e-9);
    }
}

TEST_CASE("averaging matches a fine Riemann sum on piecewise-constant interval fields") {
    // Random interval field, constant on 16 phi-sectors. The brute-force
    // oracle averages interval endpoints on a 10x finer phi grid.
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> lo(16), hi(16);
        for (int i = 0; i < 16; ++i) {
            lo[i] = rng.uniform(-2.0, 0.0);
            hi[i] = lo[i] + rng.uniform(0.0, 2.0);
        }
        SetValuedField f;
        f.dim = 1;
        // Sector boundaries sit 0.3377 cells off the quadrature nodes so both
        // grids classify every sample identically.
        f.eval = [lo, hi](double phi, const Vec&) {
            double w = std::fmod(phi, kTwoPi);
            if (w < 0) w += kTwoPi;
            int sector = static_cast<int>(std::floor(w / (kTwoPi / 16.0) - 0.337731));
            sector = ((sector % 16) + 16) % 16;
            return VertexSample{{{lo[sector]}, {hi[sector]}}, true};
        };
        auto grid = DirectionGrid::make(1);
        const int n_phi = 160;  // multiple of the sector count: grid-exact
        CompactSet cloud = as_set(average(f, {0.0}, n_phi, grid));

        double oracle_lo = 0.0, oracle_hi = 0.0;
        const int fine = n_phi * 10;
        for (int k = 0; k < fine; ++k) {
            const double phi = kTwoPi * k / fine;
            VertexSample v = f(phi, {0.0});
            oracle_lo += v.vertices[0][0];
            oracle_hi += v.vertices[1][0];
        }
        oracle_lo /= fine;
        oracle_hi /= fine;

        CHECK(std::abs(support(cloud, {1.0}) - oracle_hi) <= 1e-6);
        CHECK(std::abs(-support(cloud, {-1.0}) - oracle_lo) <= 1e-6);
    }
}

TEST_CASE("refining n_phi tightens the quadrature on smooth fields") {
    System s = make_system({.name = "decay_cos_disk", .params = {{"r", 0.1}}});
    auto grid = DirectionGrid::make(1);
    Vec x = {0.3};
    // Exact average is [-x-r, -x+r]; measure endpoint error per n_phi. Odd
    // counts keep the cosine quadrature away from its exact cancellation.
    auto err = [&](int n_phi) {
        CompactSet cloud = as_set(average(s.field, x, n_phi, grid));
        const double hi = support(cloud, {1.0});
        const double lo = -support(cloud, {-1.0});
        return std::max(std::abs(hi - (-0.3 + 0.1)), std::abs(lo - (-0.3 - 0.1)));
    };
    const double e1 = err(9);
    const double e2 = err(18);
    if (e1 > 1e-12) CHECK(e2 <= e1 / 1.5 + 1e-12);
}

TEST_CASE("average rejects non-convex samples") {
    SetValuedField f;
    f.dim = 1;
    f.eval = [](double, const Vec&) { return VertexSample{{{0.0}, {1.0}}, false}; };
    auto grid = DirectionGrid::make(1);
    CHECK_THROWS_AS((void)average(f, {0.0}, 16, grid), std::invalid_argument);
}

TEST_CASE("averaging error constant") {
    const double pi = kTwoPi / 2.0;
    // Direct substitution at all-ones arguments.
    const double expect = (std::exp(1.0) - 1.0) * 6.0 * pi + 8.0 * pi;
    CHECK(averaging_error_constant(1, 1, 1, 1, 1, 1) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(57.5214).epsilon(1e-4));

    // L -> 0+: the exponential term vanishes.
    CHECK(averaging_error_constant(1, 1, 1, 1, 1, 1e-12) ==
          doctest::Approx(8.0 * pi).epsilon(1e-9));

    // Doubling M_X more than doubles c (quadratic term).
    const double c1 = averaging_error_constant(1, 1, 1.0, 1, 1, 1);
    const double c2 = averaging_error_constant(1, 1, 2.0, 1, 1, 1);
    CHECK(c2 > 2.0 * c1);

    // Overflow reported as unbounded.
    CHECK(std::isinf(averaging_error_constant(1e-3, 10, 1, 100, 1, 10)));
    CHECK_THROWS_AS((void)averaging_error_constant(0, 1, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("lipschitz estimator") {
    System constant = make_system({.name = "constant_drift"});
    CHECK(estimate_lipschitz(constant.field, Box{{-1.0}, {1.0}}, 200, 1) ==
          doctest::Approx(0.0));

    SetValuedField neg;
    neg.dim = 1;
    neg.eval = [](double, const Vec& x) { return VertexSample{{{-x[0]}}, true}; };
    const double est = estimate_lipschitz(neg, Box{{-1.0}, {1.0}}, 500, 7);
    CHECK(est == doctest::Approx(1.0).epsilon(1e-9));

    // Estimator respects the declared constant on every shipped system.
    for (const std::string& name : available_systems()) {
        System s = make_system({.name = name});
        Box box{Vec(s.field.dim, -1.0), Vec(s.field.dim, 1.0)};
        const double sampled = estimate_lipschitz(s.field, box, 400, 11);
        CHECK(sampled <= s.field.lipschitz * 1.05 + 1e-9);
    }

    CHECK_THROWS_AS((void)estimate_lipschitz(neg, Box{{1.0}, {1.0}}, 10, 0),
                    std::invalid_argument);
}

TEST_CASE("shipped systems are 2pi-periodic in phi") {
    for (const std::string& name : available_systems()) {
        System s = make_system({.name = name});
        Box box{Vec(s.field.dim, -0.5), Vec(s.field.dim, 0.5)};
        CHECK(periodicity_defect(s.field, box, 100, 3) <= 1e-9);
    }
}

TEST_CASE("unknown system and unknown params rejected") {
    CHECK_THROWS_WITH_AS((void)make_system({.name = "no_such_system"}),
                         doctest::Contains("available:"), std::invalid_argument);
    CHECK_THROWS_AS((void)make_system({.name = "expanding", .params = {{"bogus", 1.0}}}),
                    std::invalid_argument);
}

TEST_CASE("phase field construction") {
    // X = {1}, Omega = [1, 2]: X_Phi vertices are {1/2, 1/1.5, 1}.
    System s = make_system(
        {.name = "constant_drift", .params = {{"v", 1.0}, {"omega_lo", 1.0}, {"omega_hi", 2.0}}});
    SetValuedField phi_field = make_phase_field(s.field, s.omega);
    VertexSample v = phi_field(0.0, {0.0});
    REQUIRE(v.vertices.size() == 3);
    CompactSet c = as_set(v);
    CHECK(support(c, {1.0}) == doctest::Approx(1.0));
    CHECK(-support(c, {-1.0}) == doctest::Approx(0.5));
}
