#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sgact/simulate.hpp"
#include "sgact/transfer.hpp"

using namespace sgact;

TEST_CASE("simulate: identical seeds give bit-identical histograms") {
    SimConfig cfg{oracles::spec_z2_z3(), RandomWalk::symmetric(2)};
    cfg.n_samples = 20000;
    cfg.n_orbits = 8;
    cfg.seed = 99;
    auto a = simulate_empirical(cfg);
    auto b = simulate_empirical(cfg);
    REQUIRE(a.masses.size() == b.masses.size());
    for (size_t i = 0; i < a.masses.size(); ++i) CHECK(a.masses[i] == b.masses[i]);

    cfg.threads = 2; // worker count must not change the histogram
    auto c = simulate_empirical(cfg);
    for (size_t i = 0; i < a.masses.size(); ++i) CHECK(a.masses[i] == c.masses[i]);

    cfg.seed = 100;
    auto d = simulate_empirical(cfg);
    CHECK(l1_distance(a, d) > 0.0);
}

TEST_CASE("simulate: histogram mass is exactly one") {
    SimConfig cfg{oracles::spec_mixed_nonlinear(), RandomWalk({0.3, 0.7})};
    cfg.n_samples = 50000;
    cfg.n_orbits = 4;
    auto m = simulate_empirical(cfg);
    CHECK(std::fabs(m.total() - 1.0) < 1e-12);
}

TEST_CASE("simulate: doubling map fills Lebesgue") {
    SimConfig cfg{oracles::spec_z2(), RandomWalk::symmetric(1)};
    cfg.n_samples = 1000000;
    cfg.n_orbits = 64;
    cfg.bins = 256;
    cfg.seed = 7;
    auto m = simulate_empirical(cfg);
    CHECK(l1_distance(m, EmpiricalMeasure::uniform(256)) < 0.01);
}

TEST_CASE("simulate: z2/z3 symmetric walk stays Lebesgue") {
    SimConfig cfg{oracles::spec_z2_z3(), RandomWalk::symmetric(2)};
    cfg.n_samples = 1000000;
    cfg.n_orbits = 64;
    cfg.bins = 256;
    cfg.seed = 11;
    auto m = simulate_empirical(cfg);
    CHECK(l1_distance(m, EmpiricalMeasure::uniform(256)) < 0.01);
}

TEST_CASE("simulate: nonlinear pair matches the transfer density") {
    auto spec = oracles::spec_mixed_nonlinear();
    auto density = stationary_density(spec, RandomWalk::symmetric(2), 4096);
    SimConfig cfg{spec, RandomWalk::symmetric(2)};
    cfg.n_samples = 1000000;
    cfg.n_orbits = 64;
    cfg.bins = 256;
    cfg.seed = 3;
    auto m = simulate_empirical(cfg);
    CHECK(l1_distance(m, density_to_measure(density, 256)) < 0.05);
}

TEST_CASE("simulate: orbit-length convergence diagnostic") {
    auto spec = oracles::spec_mixed_nonlinear();
    SimConfig a{spec, RandomWalk::symmetric(2)};
    a.n_samples = 100000;
    a.n_orbits = 1;
    a.bins = 64;
    a.seed = 21;
    SimConfig b = a;
    b.n_samples = 1000000;
    b.seed = 22;
    CHECK(l1_distance(simulate_empirical(a), simulate_empirical(b)) < 0.03);
}

TEST_CASE("simulate: torus orbits bin over the square") {
    IntMatrix m;
    m.dim = 2;
    m.a[0][0] = 3; m.a[0][1] = 1; m.a[1][0] = 1; m.a[1][1] = 2;
    SemigroupSpec spec({GeneratorMap::torus_linear(m)});
    SimConfig cfg{spec, RandomWalk::symmetric(1)};
    cfg.n_samples = 100000;
    cfg.n_orbits = 8;
    cfg.bins = 16;
    auto hist = simulate_empirical(cfg);
    CHECK(hist.masses.size() == 256); // 16 x 16
    CHECK(std::fabs(hist.total() - 1.0) < 1e-12);
    // the map is ergodic for Lebesgue on the 2-torus
    CHECK(l1_distance(hist, EmpiricalMeasure::uniform(16, 2)) < 0.05);
}

TEST_CASE("stationarity_test: Lebesgue against trig functions, exact zeros") {
    auto spec = oracles::spec_z2_z3();
    DensityFunction lebesgue{4096, std::vector<double>(4096, 1.0)};
    auto rep = stationarity_test(lebesgue, spec, RandomWalk::symmetric(2), trig_basis(3));
    // both sides vanish: int sin/cos(2 pi m x) dx = 0 and the maps are linear
    CHECK(rep.max_abs < 1e-13);
}

TEST_CASE("stationarity_test: empirical measure variant") {
    auto spec = oracles::spec_z2_z3();
    auto rep = stationarity_test(EmpiricalMeasure::uniform(256), spec,
                                 RandomWalk::symmetric(2), trig_basis(2));
    CHECK(rep.max_abs < 1e-2); // midpoint-rule accuracy only
    REQUIRE(rep.names.size() == 4);
    REQUIRE(rep.discrepancies.size() == 4);
}

TEST_CASE("stationarity_test: transfer density of the nonlinear pair") {
    auto spec = oracles::spec_mixed_nonlinear();
    auto density = stationary_density(spec, RandomWalk::symmetric(2), 4096);
    auto rep = stationarity_test(density, spec, RandomWalk::symmetric(2), trig_basis(5));
    CHECK(rep.max_abs < 1e-4);
    CHECK(rep.max_abs < 1e-6); // sharper bound observed at grid 4096
}

TEST_CASE("skew_invariance_check: Lebesgue is stationary for every walk here") {
    auto spec = oracles::spec_z2_z3();
    DensityFunction lebesgue{4096, std::vector<double>(4096, 1.0)};
    auto one = skew_invariance_check(lebesgue, spec, RandomWalk::symmetric(2), 1, 1000000, 64, 5);
    CHECK(one.l1_drift < 0.01);

    auto biased = skew_invariance_check(lebesgue, spec, RandomWalk({0.9, 0.1}), 1, 1000000, 64, 6);
    CHECK(biased.l1_drift < 0.01);
}

TEST_CASE("skew_invariance_check: transfer density of the nonlinear pair, 5 steps") {
    auto spec = oracles::spec_mixed_nonlinear();
    auto density = stationary_density(spec, RandomWalk::symmetric(2), 4096);
    auto rep = skew_invariance_check(density, spec, RandomWalk::symmetric(2), 5, 1000000, 64, 8);
    CHECK(rep.l1_drift < 0.05);
}

TEST_CASE("simulate validation") {
    SimConfig cfg{oracles::spec_z2(), RandomWalk::symmetric(1)};
    cfg.bins = 100; // not a power of two
    CHECK_THROWS_AS(simulate_empirical(cfg), ValidationError);
    cfg.bins = 256;
    cfg.n_orbits = 0;
    CHECK_THROWS_AS(simulate_empirical(cfg), ValidationError);
}
